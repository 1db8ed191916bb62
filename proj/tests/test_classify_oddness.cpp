#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "warpein/errors.hpp"
#include "warpein/solver.hpp"

using namespace warpein;
using namespace testsupport;

namespace {

Profile sphere_pole_approach(double a, double b, int N) {
  Profile p;
  p.params = sin_cos_params(3, 2);
  p.ts = uniform_grid(a, b, N);
  for (double t : p.ts) p.states.push_back(sin_cos_state(t));
  return p;
}

}  // namespace

TEST_SUITE("classify_oddness") {

TEST_CASE("boundary signature: f = 0 with f' bounded away from zero") {
  ClassifyInputs in;
  in.state.t = 0.0;
  in.state.u = 1.0;
  in.state.du = 0.0;
  in.state.f = 0.0;
  in.state.df = 1.0;
  in.state.ddf = 0.0;
  in.had_event = true;
  const EndpointClass out = classify_endpoint(in, cosh_sinh_params(3, 2));
  CHECK(out.kind == EndpointKind::boundary);
  CHECK(out.diagnostics.at("boundary_residual") == 0.0);
  CHECK(out.note.empty());
}

TEST_CASE("boundary signature with residual u' earns a structure warning") {
  ClassifyInputs in;
  in.state.u = 1.0;
  in.state.du = 0.01;  // violates u' = 0 on the boundary
  in.state.f = 0.0;
  in.state.df = 1.0;
  const EndpointClass out = classify_endpoint(in, cosh_sinh_params(3, 2));
  CHECK(out.kind == EndpointKind::boundary);
  CHECK(out.note.find("violates the boundary structure") != std::string::npos);
}

TEST_CASE("critical signature: min/max decided by sign(f) f''") {
  ClassifyInputs in;
  in.state.t = 0.0;
  in.state.u = 0.0;
  in.state.du = 1.0;
  in.state.f = 1.0;
  in.state.df = 0.0;
  in.state.ddf = 0.5;  // f > 0 curving up: a minimum of the potential
  const EndpointClass lo = classify_endpoint(in, sinh_cosh_params(3, 2));
  CHECK(lo.kind == EndpointKind::critical_min);
  CHECK(lo.diagnostics.at("du_sq_minus_k") == 0.0);

  in.state.f = -1.0;
  in.state.ddf = 0.5;  // sign(f) f'' < 0: |f| peaks (antipodal pole)
  const EndpointClass hi = classify_endpoint(in, sin_cos_params(3, 2));
  CHECK(hi.kind == EndpointKind::critical_max);

  // the ddf_reference override wins over the endpoint state's own f''
  in.state.f = 1.0;
  in.state.ddf = 0.5;
  in.ddf_reference = -0.5;
  const EndpointClass ref = classify_endpoint(in, sin_cos_params(3, 2));
  CHECK(ref.kind == EndpointKind::critical_max);
}

TEST_CASE("ambiguous endpoints are refused, not guessed") {
  ClassifyInputs both;
  both.state.u = 1.0;
  both.state.f = 0.0;
  both.state.df = 0.0;
  CHECK_THROWS_AS(classify_endpoint(both, cosh_sinh_params(3, 2)),
                  AmbiguousEndpoint);

  ClassifyInputs degen;
  degen.state.u = 0.0;
  degen.state.du = 0.0;  // critical signature with u' also vanishing
  degen.state.f = 1.0;
  degen.state.df = 0.0;
  CHECK_THROWS_AS(classify_endpoint(degen, sin_cos_params(3, 2)),
                  AmbiguousEndpoint);
}

TEST_CASE("infinite and stopped classifications") {
  ClassifyInputs in;
  in.state = cosh_sinh_state(20.0);
  in.span_exhausted = true;
  in.span_unbounded = true;
  const EndpointClass inf = classify_endpoint(in, cosh_sinh_params(3, 2));
  CHECK(inf.kind == EndpointKind::infinite);
  CHECK(inf.unbounded);

  in.span_unbounded = false;
  const EndpointClass stop = classify_endpoint(in, cosh_sinh_params(3, 2));
  CHECK(stop.kind == EndpointKind::stopped);
  CHECK_FALSE(stop.unbounded);
}

TEST_CASE("an interior extremum of f is called out in the stop note") {
  ClassifyInputs in;
  in.state.t = 1.0;
  in.state.u = 2.0;  // u well away from zero
  in.state.du = 0.5;
  in.state.f = 1.0;
  in.state.df = 0.0;  // f' = 0: extremum, but not a structural endpoint
  const EndpointClass out = classify_endpoint(in, sinh_cosh_params(3, 2));
  CHECK(out.kind == EndpointKind::stopped);
  CHECK(out.note.find("interior extremum") != std::string::npos);
}

TEST_CASE("classification guards its inputs") {
  ClassifyInputs in;
  in.state = cosh_sinh_state(1.0);
  in.tol = -1.0;
  CHECK_THROWS_AS(classify_endpoint(in, cosh_sinh_params(3, 2)),
                  ConstraintViolation);
}

TEST_CASE("oddness check passes at the sphere pole") {
  const Profile prof = sphere_pole_approach(0.05, 0.25, 12);
  const OddnessReport rep = oddness_check(prof, 0.0);
  CHECK(rep.pass);
  CHECK(std::abs(rep.u_at) <= 1e-6);
  CHECK(std::abs(rep.ddu_at) <= 1e-6);
  CHECK(std::abs(rep.d4u_at) <= 1e-6);
  CHECK(std::abs(rep.du_sq_minus_k) <= 1e-6);
  CHECK(std::abs(rep.du_at - 1.0) <= 1e-6);  // u' -> cos(0) = 1
  CHECK(rep.width == 8);
}

TEST_CASE("oddness check fails where u is even, not odd") {
  // u = cosh about t = 0: u(0) = 1 and u' (0) = 0 violate both parity
  // requirements.
  const Profile prof = cosh_sinh_profile(0.05, 0.25, 12);
  const OddnessReport rep = oddness_check(prof, 0.0);
  CHECK_FALSE(rep.pass);
  CHECK(rep.u_at == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("oddness check needs enough usable nodes") {
  const Profile prof = sphere_pole_approach(0.05, 0.25, 6);
  CHECK_THROWS_AS(oddness_check(prof, 0.0), ResolutionError);
}

}  // TEST_SUITE
