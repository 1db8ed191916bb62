#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "warpein/errors.hpp"
#include "warpein/solver.hpp"

using namespace warpein;
using namespace testsupport;

namespace {

/** The boundary problem of the cosh/sinh example: start on the boundary at
 *  t = 0 with u(0) = 1, unknown slope s = f'(0), and require f(2) = sinh 2. */
ShootingProblem cosh_sinh_boundary_problem() {
  ShootingProblem pr;
  pr.params = cosh_sinh_params(3, 2);
  pr.boundary_start = BoundaryStart{0.0, 1.0, 0.0};
  pr.free_parameter = "s";
  pr.bracket_lo = 0.5;
  pr.bracket_hi = 2.0;
  pr.t_end = 2.0;
  pr.anchor = Anchor{2.0, "f", kSinh2};
  return pr;
}

}  // namespace

TEST_SUITE("shoot") {

TEST_CASE("boundary problem recovers the potential slope f'(0) = 1") {
  const ShootResult res = shoot(cosh_sinh_boundary_problem());
  CHECK(std::abs(res.parameter - 1.0) <= 1e-6);
  CHECK(res.iterations <= 60);
  CHECK(std::abs(res.mismatch) <= 1e-8);
  // the recovered trajectory is the cosh/sinh solution
  CHECK(std::abs(res.solution.last.u - kCosh2) <= 1e-6);
}

TEST_CASE("interior problem recovers the missing derivative f'(1) = cosh 1") {
  ShootingProblem pr;
  pr.params = cosh_sinh_params(3, 2);
  pr.interior_start = IVPState{1.0, kCosh1, kSinh1, kSinh1, 1.2};
  pr.free_parameter = "df0";
  pr.bracket_lo = 1.0;
  pr.bracket_hi = 2.0;
  pr.t_end = 2.0;
  pr.anchor = Anchor{2.0, "f", kSinh2};
  pr.tol = 1e-10;
  const ShootResult res = shoot(pr);
  CHECK(std::abs(res.parameter - kCosh1) <= 1e-8);
}

TEST_CASE("critical-start problem recovers the pole parameter P = -1") {
  // On the round sphere the pole family is parametrized by P = u'''(0);
  // require the boundary (equator) to sit at t = pi/2.
  ShootingProblem pr;
  pr.params = sin_cos_params(3, 2);
  pr.critical_start = CriticalStart{0.0, 1.0, 1.0, 0.0};
  pr.free_parameter = "P";
  pr.bracket_lo = -2.0;
  pr.bracket_hi = -0.5;
  pr.t_end = 2.5;
  pr.target = EndpointKind::boundary;
  pr.t_target = kPiHalf;
  pr.tol = 1e-10;
  const ShootResult res = shoot(pr);
  CHECK(std::abs(res.parameter + 1.0) <= 1e-3);
  CHECK(res.iterations <= 60);
}

TEST_CASE("a bracket that does not straddle the root is refused") {
  ShootingProblem pr = cosh_sinh_boundary_problem();
  pr.bracket_lo = 1.5;  // f(2) scales linearly with s: same sign at both ends
  pr.bracket_hi = 2.0;
  CHECK_THROWS_AS(shoot(pr), BracketError);
}

TEST_CASE("iteration exhaustion raises MaxIterations with the best candidate") {
  ShootingProblem pr;
  pr.params = sin_cos_params(3, 2);
  pr.critical_start = CriticalStart{0.0, 1.0, 1.0, 0.0};
  pr.free_parameter = "P";
  pr.bracket_lo = -2.0;
  pr.bracket_hi = -0.5;
  pr.t_end = 2.5;
  pr.target = EndpointKind::boundary;
  pr.t_target = kPiHalf;
  pr.tol = 1e-14;   // unreachable at this integration tolerance
  pr.max_iter = 4;  // and no budget to try
  try {
    shoot(pr);
    FAIL("expected MaxIterations");
  } catch (const MaxIterations& e) {
    CHECK(e.best_candidate >= -2.0);
    CHECK(e.best_candidate <= -0.5);
  }
}

TEST_CASE("structural misuse of the problem definition is refused") {
  SUBCASE("two start modes at once") {
    ShootingProblem pr = cosh_sinh_boundary_problem();
    pr.interior_start = IVPState{1.0, kCosh1, kSinh1, kSinh1, kCosh1};
    CHECK_THROWS_AS(shoot(pr), ConstraintViolation);
  }
  SUBCASE("free parameter foreign to the start mode") {
    ShootingProblem pr = cosh_sinh_boundary_problem();
    pr.free_parameter = "P";
    CHECK_THROWS_AS(shoot(pr), ConstraintViolation);
  }
  SUBCASE("inverted bracket") {
    ShootingProblem pr = cosh_sinh_boundary_problem();
    pr.bracket_lo = 2.0;
    pr.bracket_hi = 0.5;
    CHECK_THROWS_AS(shoot(pr), ConstraintViolation);
  }
  SUBCASE("neither anchor nor target") {
    ShootingProblem pr = cosh_sinh_boundary_problem();
    pr.anchor.reset();
    CHECK_THROWS_AS(shoot(pr), ConstraintViolation);
  }
  SUBCASE("event target without a required time") {
    ShootingProblem pr = cosh_sinh_boundary_problem();
    pr.anchor.reset();
    pr.target = EndpointKind::boundary;
    CHECK_THROWS_AS(shoot(pr), ConstraintViolation);
  }
}

}  // TEST_SUITE
