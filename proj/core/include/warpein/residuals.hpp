/** \file residuals.hpp
 *  \brief Residual evaluation of the defining equations over profiles,
 *         reconstruction of f from u, and verification reports.
 *
 *  The scalar reduction of Hess f = (f/m)(Ric - lambda g) consists of
 *    - the first (radial) condition      f'' + a f = 0,
 *    - the second (tangential) condition b f' + c f = 0,
 *    - a u-only quartic compatibility polynomial equivalent to
 *      -a = -(c/b)' + (c/b)^2 wherever u' != 0,
 *  with a = (n-1)/m * u''/u + lambda/m, b = m u'/u and
 *  c = lambda - [(n-2)k - (n-2)u'^2 - u u''] / u^2.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "warpein/types.hpp"

namespace warpein {

/** Coefficient triple of the reduced linear system in f. */
struct ABCCoefficients {
  double a = 0;  ///< (n-1)/m * u''/u + lambda/m    (first condition: f'' = -a f)
  double b = 0;  ///< m u'/u
  double c = 0;  ///< lambda - [(n-2)k - (n-2)u'^2 - u u''] / u^2
};

/** Evaluates (a, b, c) at a state.  Requires u != 0. */
ABCCoefficients coeff_abc(const PointState& state, const SpaceParams& params);

/** First (radial) necessary condition residual: f'' + a f. */
double residual_first(const PointState& state, const SpaceParams& params);

/** Second (tangential) necessary condition residual: b f' + c f. */
double residual_second(const PointState& state, const SpaceParams& params);

/** Compatibility residual: the u-only quartic polynomial
 *
 *    lambda^2 u^4 - 2(n-2) k lambda u^2 + 2(n-2) lambda u^2 u'^2
 *    + (2+m) lambda u^3 u'' + (n-2)^2 k^2 - (2(n-2)+m)(n-2) k u'^2
 *    - (2+m)(n-2) k u u'' + (n-2)(m+n-2) u'^4 + (2(n-2)+m) u u'^2 u''
 *    + (1+m) u^2 u''^2 - m u^2 u' u'''.
 *
 *  This form was re-derived symbolically from -a = -(c/b)' + (c/b)^2 by
 *  clearing the denominators u^2, u', m; it vanishes identically on every
 *  closed-form family in the catalog.  A variant sometimes found in print
 *  carries (m + 2(n-2)) instead of 2(n-2) on the lambda u^2 u'^2 term — i.e.
 *  an extra m lambda u^2 u'^2 — and fails on all non-flat families; it is
 *  exposed as residual_compat_printed so the discrepancy stays visible. */
double residual_compat(const PointState& state, const SpaceParams& params);

/** The as-printed variant of the compatibility polynomial (differs from
 *  residual_compat by + m lambda u^2 u'^2).  Kept for comparison only. */
double residual_compat_printed(const PointState& state, const SpaceParams& params);

/** Independent evaluation route for the compatibility condition: the cleared
 *  numerator of -a + (c/b)' - (c/b)^2 computed directly from its quotient
 *  structure,
 *
 *    m^2 u^2 u'^2 a - m u u' N' + m N (u'^2 + u u'') + N^2,
 *
 *  with N = lambda u^2 - (n-2)k + (n-2)u'^2 + u u'' and N' its t-derivative.
 *  Agrees with residual_compat identically (same polynomial, different
 *  grouping); used for cross-derivation checks. */
double residual_compat_quotient(const PointState& state, const SpaceParams& params);

namespace detail {
/** Templated evaluators (double / long double) behind the three compat
 *  routes, for cross-checks at extended precision. */
template <class T>
T compat_poly(T u, T du, T ddu, T dddu, T lambda, T k, int n, int m);
template <class T>
T compat_quotient(T u, T du, T ddu, T dddu, T lambda, T k, int n, int m);
template <class T>
T compat_printed(T u, T du, T ddu, T dddu, T lambda, T k, int n, int m);

extern template double compat_poly<double>(double, double, double, double, double, double, int, int);
extern template double compat_quotient<double>(double, double, double, double, double, double, int, int);
extern template double compat_printed<double>(double, double, double, double, double, double, int, int);
extern template long double compat_poly<long double>(long double, long double, long double, long double, long double, long double, int, int);
extern template long double compat_quotient<long double>(long double, long double, long double, long double, long double, long double, int, int);
extern template long double compat_printed<long double>(long double, long double, long double, long double, long double, long double, int, int);
}  // namespace detail

/** Boundary residual |f''| + |u'|; meaningful only at states with f = 0.
 *  Throws InputError when |f| > f_tol (not a boundary point). */
double residual_boundary(const PointState& state, double f_tol = 1e-8);

/** Per-node normalization max(1, |lambda| u^2, |f''|) used for the verdict
 *  (the compatibility polynomial is degree 4 in u, so raw sup-norms are
 *  scale-dependent). */
double residual_normalization(const PointState& state, const SpaceParams& params);

/** Sup-norm residual report over a grid. */
struct ResidualReport {
  // normalized sup-norms (these drive the verdict)
  double r_second = 0;
  double r_compat = 0;
  double r_first = 0;
  // raw sup-norms
  double raw_r_second = 0;
  double raw_r_compat = 0;
  double raw_r_first = 0;
  /** |f''| + |u'| at endpoint nodes with f ~ 0; absent when no boundary
   *  endpoint exists on the grid. */
  std::optional<double> r_boundary;
  std::size_t grid_size = 0;
  double tolerance = 0;
  bool verdict = false;  ///< pass iff every present normalized residual <= tolerance
  // mu statistics over the grid (constancy diagnostic)
  double mu_min = 0, mu_max = 0, mu_mean = 0, mu_spread = 0;
  /** Max over nodes of |mu_i(direct) - mu_i(reduced)| from eigen_data. */
  double mu_route_gap = 0;
  bool f_positive_interior = true;  ///< f > 0 at all interior nodes
  std::vector<std::string> filled_columns;  ///< copied from the profile
};

/** Evaluates residual_second, residual_compat and residual_first at all
 *  interior nodes (the first condition is redundant given the other two and
 *  constant mu, but is always computed as a transcription cross-check),
 *  and residual_boundary at endpoint nodes where |f| <= 100 tol max(1,|f'|).
 *  Verdict passes iff all present normalized sup-norms are <= tol.
 *  Throws MalformedProfile if any node has u <= 0. */
ResidualReport verify(const Profile& profile, double tol);

/** Reconstructs f from u-data by the quadrature formula
 *  f(t) = f0 exp(-Int c/b) (then f' = -(c/b) f and f'' = -a f).
 *
 *  The integrand g = c/b and its analytic derivative are known at every node
 *  (g' needs u''', which the profile carries), so each panel uses the cubic
 *  Hermite two-point rule h/2 (g0+g1) + h^2/12 (g0'-g1') with the trapezoid
 *  value as fallback when derivative data is non-finite; the local Hermite
 *  correction serves as the error indicator.  Requires u' != 0 at every node
 *  (throws SingularQuadrature otherwise) and f0 > 0. */
Profile f_from_u(const Profile& u_profile, double f0);

}  // namespace warpein
