/** \file geometry.hpp
 *  \brief Pointwise curvature, Hessian and eigenvalue data for
 *         g = dt^2 + u(t)^2 g_N with an Einstein fiber.
 *
 *  The Ricci tensor of such a metric has (at most) two eigenvalues: gamma1 on
 *  the radial direction and gamma2 on directions tangent to the fiber.  The
 *  Hessian of a radial potential f(t) likewise has eigenvalues (f'', f' u'/u).
 *  All operations are pure functions and thread-safe.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <limits>
#include <utility>

#include "warpein/types.hpp"

namespace warpein {

/** Radial Ricci eigenvalue gamma1 = -(n-1) u''/u.  Requires u != 0. */
double ricci_radial(const PointState& state, const SpaceParams& params);

/** Tangential Ricci eigenvalue gamma2 = [(n-2)(k - u'^2) - u u''] / u^2.
 *  Requires u != 0. */
double ricci_tangential(const PointState& state, const SpaceParams& params);

/** Scalar curvature Scal = gamma1 + (n-1) gamma2. */
double scalar_curvature(const PointState& state, const SpaceParams& params);

/** Hessian eigenvalues (mu1, mu2) = (f'', f' u'/u) in the radial and
 *  tangential directions.  Requires u != 0. */
std::pair<double, double> hess_components(const PointState& state);

/** Laplacian of the potential, Delta f = f'' + (n-1)(u'/u) f'. */
double laplacian_f(const PointState& state, const SpaceParams& params);

/** The fiber constant mu = f Delta f + (m-1) f'^2 + lambda f^2.
 *
 *  For a solution of the defining system this quantity is the constant that
 *  the fiber Ricci curvature must equal (Ric_F = mu g_F); constancy along t
 *  is therefore a conserved-quantity diagnostic. */
double mu_invariant(const PointState& state, const SpaceParams& params);

/** Radial residual of the m-Bakry-Emery reformulation:
 *  gamma1 - m f''/f - lambda.
 *
 *  Vanishes exactly where the first necessary condition f'' + a f = 0 holds
 *  (the two residuals are related by a factor -m/f).  Requires f != 0. */
double bakry_emery_radial(const PointState& state, const SpaceParams& params);

/** Aggregated eigenvalue data at a point. */
struct EigenData {
  double gamma1 = 0;  ///< radial Ricci eigenvalue
  double gamma2 = 0;  ///< tangential Ricci eigenvalue
  double scal = 0;    ///< scalar curvature = gamma1 + (n-1) gamma2
  double sigma1 = 0;  ///< Schouten eigenvalue gamma1 - Scal/(2(n-1))
  double sigma2 = 0;  ///< Schouten eigenvalue gamma2 - Scal/(2(n-1))
  double rho = 0;     ///< ((n-1) lambda - Scal)/(m-1)
  double p1 = 0;      ///< gamma1 - rho
  double p2 = 0;      ///< gamma2 - rho
  double mu1 = 0;     ///< Hessian eigenvalue f'' (direct)
  double mu2 = 0;     ///< Hessian eigenvalue f' u'/u (direct)
  double mu1_reduced = 0;  ///< (f/m)(gamma1 - lambda), the reduced-form route
  double mu2_reduced = 0;  ///< (f/m)(gamma2 - lambda)
  double kbar = 0;    ///< (lambda - rho)/m
  double route_gap = 0;    ///< max_i |mu_i - mu_i_reduced|
  bool in_O = false;  ///< df != 0 and sigma1 != sigma2 (within gap_tol)
};

/** Computes all EigenData fields.
 *
 *  The Hessian eigenvalues are evaluated both directly and through the
 *  reduced form mu_i = (f/m)(gamma_i - lambda); for states solving the
 *  defining system the two routes agree.  If \p route_tol is finite and the
 *  routes disagree beyond it, a ConsistencyError is thrown (this flags an
 *  input state that does not satisfy the system).  \p gap_tol decides
 *  O-membership: in_O iff |df| > gap_tol and |sigma1 - sigma2| > gap_tol. */
EigenData eigen_data(const PointState& state, const SpaceParams& params,
                     double gap_tol = 1e-9,
                     double route_tol = std::numeric_limits<double>::infinity());

}  // namespace warpein
