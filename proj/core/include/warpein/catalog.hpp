/** \file catalog.hpp
 *  \brief Closed-form solution families (u, f, lambda, k) and the
 *         sign-classification table they populate.
 *
 *  The catalog is organized by the signs of lambda and of the fiber constant
 *  mu: three populated lambda < 0 cells, one lambda = 0 cell, one
 *  lambda > 0 cell, and four empty cells.  Each entry resolves its printed
 *  form (some references print dimensionally odd prefactors such as
 *  "sqrt(kbar) sin^2(sqrt(kbar) t)" for the squared warping factor) into a
 *  verified closed form; both strings are emitted so the discrepancy stays
 *  visible.  The catalog is immutable and thread-safe.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "warpein/types.hpp"

namespace warpein {

enum class FamilyId {
  hyperbolic_boundary,  ///< lambda < 0, mu > 0: u = A cosh(r t), f = C sinh(r t)
  exp_einstein,         ///< lambda < 0, mu = 0: u = e^{r t},     f = C e^{r t}
  hyperbolic_ball,      ///< lambda < 0, mu < 0: u = sinh(r t)/r, f = C cosh(r t)
  flat_ray,             ///< lambda = 0, mu > 0: u = 1,           f = C t
  round_sphere          ///< lambda > 0, mu > 0: u = sin(r t)/r,  f = C cos(r t)
};

/** A fully resolved catalog entry. */
struct ClosedFormFamily {
  FamilyId id{};
  std::string name;
  SpaceParams params;      ///< n, m and the resolved lambda, k
  double kbar = 0;         ///< signed curvature scale (lambda - rho)/m
  double C = 1;            ///< potential amplitude (f scale)
  double mu_expected = 0;  ///< the constant mu of the family
  int lambda_sign = 0;     ///< -1 / 0 / +1 table row
  int mu_sign = 0;         ///< -1 / 0 / +1 table column
  std::string printed_form;   ///< squared-warping form as sometimes printed
  std::string resolved_form;  ///< the verified closed form of (u, f)
  // domain of the structure (f > 0, u > 0); open ends are singular or excluded
  double t_min = 0, t_max = 0;
  bool open_left = false, open_right = false;
  bool unbounded_left = false, unbounded_right = false;
  EndpointKind left_kind = EndpointKind::stopped;
  EndpointKind right_kind = EndpointKind::stopped;

  /** Analytic evaluation of the full state at t (never finite differences).
   *  Throws GridError outside the closure of the domain. */
  PointState eval(double t) const;

  /** True if t may be sampled: inside the domain, excluding singular (u = 0)
   *  endpoints but including regular closed endpoints. */
  bool in_domain(double t) const;
};

/** One cell of the sign table. */
struct CatalogCell {
  int lambda_sign = 0;       ///< -1, 0, +1
  int mu_sign = 0;           ///< -1, 0, +1
  std::string family_name;   ///< empty if the cell admits no family
};

/** All known family names (five). */
std::vector<std::string> catalog_names();

/** The 3x3 sign table (lambda row-major: -1, 0, +1; mu: -1, 0, +1),
 *  with four empty cells. */
std::vector<CatalogCell> catalog_table();

/** Maps a sign cell to its family name.  Throws ConstraintViolation for the
 *  four empty cells (e.g. lambda > 0 with mu = 0 admits no family). */
std::string family_for_cell(int lambda_sign, int mu_sign);

/** Resolves a family by name with the given dimensions and constants.
 *
 *  Recognized constant keys (defaults in parentheses):
 *    hyperbolic-boundary: kbar (-1, must be < 0), k (-1, must be < 0), C (1, > 0)
 *    exp-einstein:        kbar (-1, must be < 0), a  (1, > 0)   [f = a e^{rt}]
 *    hyperbolic-ball:     kbar (-1, must be < 0), C (1, > 0)    [k = +1 fiber]
 *    flat-ray:            C (1, > 0)                            [k = 0, lambda = 0]
 *    round-sphere:        kbar (+1, must be > 0), C (1, > 0)    [k = +1 fiber]
 *  with r = sqrt(|kbar|) and lambda = (n+m-1) kbar.
 *
 *  Throws UnknownFamily for unknown names and ConstraintViolation for
 *  constants outside validity (including requests for empty table cells,
 *  e.g. a lambda > 0 family with mu = 0). */
ClosedFormFamily instantiate(const std::string& name, int n, int m,
                             const std::map<std::string, double>& constants = {});

/** Samples the family on the given grid with all derivatives analytic.
 *  Throws GridError when the grid is empty or leaves the domain. */
Profile sample(const ClosedFormFamily& family, const std::vector<double>& grid);

/** The fiber constant at t, delegated to mu_invariant on the sampled state. */
double requested_mu(const ClosedFormFamily& family, double t);

}  // namespace warpein
