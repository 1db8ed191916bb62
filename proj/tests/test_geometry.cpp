#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "warpein/errors.hpp"
#include "warpein/geometry.hpp"

using namespace warpein;
using namespace testsupport;

TEST_SUITE("geometry") {

TEST_CASE("Ricci eigenvalues and scalar curvature on the cosh/sinh space") {
  // u = cosh t is a hyperbolic metric: gamma1 = gamma2 = -(n-1),
  // Scal = -n(n-1), independent of t.
  for (int n : {3, 4, 5}) {
    const SpaceParams p = cosh_sinh_params(n, 2);
    for (double t : {0.3, 1.0, 2.2}) {
      const PointState s = cosh_sinh_state(t);
      CHECK(ricci_radial(s, p) == doctest::Approx(-(n - 1)).epsilon(1e-12));
      CHECK(ricci_tangential(s, p) == doctest::Approx(-(n - 1)).epsilon(1e-12));
      CHECK(scalar_curvature(s, p) ==
            doctest::Approx(-double(n) * (n - 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Ricci eigenvalues on the round sphere") {
  const SpaceParams p = sin_cos_params(3, 2);
  for (double t : {0.4, 1.1}) {
    const PointState s = sin_cos_state(t);
    CHECK(ricci_radial(s, p) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ricci_tangential(s, p) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(scalar_curvature(s, p) == doctest::Approx(6.0).epsilon(1e-12));
  }
}

TEST_CASE("Hessian eigenvalues coincide on the cosh/sinh solution") {
  // Hess f has eigenvalues f'' (radial) and f' u'/u (tangential); with
  // u = cosh, f = sinh both equal sinh t.
  for (double t : {0.5, 1.7}) {
    const auto [h1, h2] = hess_components(cosh_sinh_state(t));
    CHECK(h1 == doctest::Approx(std::sinh(t)).epsilon(1e-12));
    CHECK(h2 == doctest::Approx(std::sinh(t)).epsilon(1e-12));
  }
}

TEST_CASE("Laplacian of the potential: Delta f = n f on the cosh/sinh space") {
  for (int n : {3, 5}) {
    const SpaceParams p = cosh_sinh_params(n, 3);
    for (double t : {0.2, 1.4}) {
      const PointState s = cosh_sinh_state(t);
      CHECK(laplacian_f(s, p) == doctest::Approx(n * s.f).epsilon(1e-12));
    }
  }
}

TEST_CASE("mu invariant is constant with the oracle value on each family") {
  SUBCASE("cosh/sinh: mu = m - 1") {
    for (int m : {2, 3}) {
      const SpaceParams p = cosh_sinh_params(4, m);
      for (double t : {0.3, 1.0, 2.5})
        CHECK(mu_invariant(cosh_sinh_state(t), p) ==
              doctest::Approx(m - 1.0).epsilon(1e-12));
    }
  }
  SUBCASE("sin/cos: mu = +(m - 1)") {
    const SpaceParams p = sin_cos_params(3, 2);
    for (double t : {0.3, 1.2})
      CHECK(mu_invariant(sin_cos_state(t), p) ==
            doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("sinh/cosh: mu = -(m - 1) C^2") {
    const SpaceParams p = sinh_cosh_params(3, 3);
    for (double t : {0.4, 1.5})
      CHECK(mu_invariant(sinh_cosh_state(t, 2.0), p) ==
            doctest::Approx(-2.0 * 4.0).epsilon(1e-12));
  }
  SUBCASE("flat ray: mu = (m - 1) C^2") {
    const SpaceParams p = flat_ray_params(3, 2);
    for (double t : {0.5, 2.0})
      CHECK(mu_invariant(flat_ray_state(t, 1.5), p) ==
            doctest::Approx(1.0 * 2.25).epsilon(1e-12));
  }
  SUBCASE("exponential: mu = 0") {
    const SpaceParams p = exp_params(4, 2);
    for (double t : {-0.5, 0.8})
      CHECK(mu_invariant(exp_state(t, 0.7), p) ==
            doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("mu invariant is insensitive to the potential scale gauge") {
  // The defining system is linear in f, so f -> 2f multiplies mu by 4.
  const SpaceParams p = cosh_sinh_params(3, 2);
  PointState s = cosh_sinh_state(0.9);
  const double mu1 = mu_invariant(s, p);
  s.f *= 2;
  s.df *= 2;
  s.ddf *= 2;
  CHECK(mu_invariant(s, p) == doctest::Approx(4.0 * mu1).epsilon(1e-12));
}

TEST_CASE("eigen_data: the two Hessian routes agree on a solution") {
  const SpaceParams p = cosh_sinh_params(3, 2);
  const PointState s = cosh_sinh_state(1.0);
  const EigenData e = eigen_data(s, p);
  CHECK(e.gamma1 == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e.gamma2 == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e.scal == doctest::Approx(-6.0).epsilon(1e-12));
  // Direct route f'' versus reduced route (f/m)(gamma1 - lambda).
  CHECK(e.mu1 == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
  CHECK(e.mu1_reduced == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
  CHECK(e.mu2 == doctest::Approx(e.mu2_reduced).epsilon(1e-12));
  CHECK(e.route_gap <= 1e-12);
  // rho = ((n-1) lambda - Scal)/(m-1) = (2(-4) + 6)/1 = -2; kbar = -1.
  CHECK(e.rho == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e.kbar == doctest::Approx(-1.0).epsilon(1e-12));
  // gamma1 = gamma2 here, so the Schouten eigenvalues coincide: not in O.
  CHECK(e.sigma1 == doctest::Approx(e.sigma2).epsilon(1e-12));
  CHECK_FALSE(e.in_O);
}

TEST_CASE("eigen_data: distinct Schouten eigenvalues put a state in O") {
  const SpaceParams p{3, 2, -1.0, 1.0};
  PointState s;
  s.u = 1.3;
  s.du = 0.4;
  s.ddu = -0.2;
  s.f = 0.9;
  s.df = 0.7;
  s.ddf = 0.1;
  const EigenData e = eigen_data(s, p);
  CHECK(std::abs(e.sigma1 - e.sigma2) > 1e-9);
  CHECK(e.in_O);
}

TEST_CASE("eigen_data: route disagreement raises ConsistencyError") {
  const SpaceParams p = cosh_sinh_params(3, 2);
  PointState s = cosh_sinh_state(1.0);
  s.ddf += 0.5;  // breaks the radial condition: routes now differ by 0.5
  CHECK_NOTHROW(eigen_data(s, p));  // infinite route_tol only records the gap
  CHECK(eigen_data(s, p).route_gap == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(eigen_data(s, p, 1e-9, 1e-6), ConsistencyError);
}

TEST_CASE("radial Bakry-Emery combination vanishes on solutions") {
  CHECK(bakry_emery_radial(cosh_sinh_state(0.8), cosh_sinh_params(3, 2)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bakry_emery_radial(sin_cos_state(0.6), sin_cos_params(4, 3)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bakry_emery_radial(sinh_cosh_state(1.2, 1.5),
                           sinh_cosh_params(5, 2)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

}  // TEST_SUITE
