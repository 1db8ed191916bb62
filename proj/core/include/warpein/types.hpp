/** \file types.hpp
 *  \brief Core value types shared by all warpein modules.
 *
 *  The library studies metrics g = dt^2 + u(t)^2 g_N on an interval times an
 *  Einstein fiber N, together with a potential f(t) >= 0 solving
 *  Hess f = (f/m)(Ric - lambda g).  Everything reduces to scalar data along
 *  the t-axis, which these types carry.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "warpein/errors.hpp"

namespace warpein {

/** Scalar problem data (n, m, lambda, k).
 *
 *  n is the dimension of the warped-product base (interval plus fiber) and m
 *  the effective dimension of the potential term.  k is the normalized scalar
 *  curvature of the fiber, with the convention Ric_N = k (n-2) g_N.
 *
 *  Note the two distinct curvature scalars used throughout the library:
 *  \c k is the fiber constant above, while \c rho (see EigenData) is the
 *  derived quantity ((n-1) lambda - Scal)/(m-1).  They are never
 *  interchangeable.
 */
struct SpaceParams {
  int n = 3;           ///< base dimension, n >= 2
  int m = 2;           ///< potential dimension parameter, m >= 2
  double lambda = 0.0; ///< Einstein constant
  double k = 0.0;      ///< normalized fiber curvature, Ric_N = k (n-2) g_N

  /** Throws ConstraintViolation unless n >= 2, m >= 2 and lambda, k finite. */
  void validate() const;
};

/** Full pointwise trajectory data (t, u, u', u'', u''', f, f', f''). */
struct PointState {
  double t = 0.0;
  double u = 0.0;
  double du = 0.0;
  double ddu = 0.0;
  double dddu = 0.0;
  double f = 0.0;
  double df = 0.0;
  double ddf = 0.0;
};

/** Endpoint taxonomy of a maximal interval of the (u, f) system. */
enum class EndpointKind {
  boundary,      ///< f -> 0 with f' != 0 (structure boundary; u' and f'' vanish there)
  critical_min,  ///< f' -> 0, u -> 0, u' != 0; local minimum of |f|
  critical_max,  ///< f' -> 0, u -> 0, u' != 0; local maximum of |f|
  infinite,      ///< no event on an unbounded span (complete direction)
  stopped        ///< integration stopped: span end, step underflow, or unstructured state
};

std::string to_string(EndpointKind kind);

/** Classification record for one end of an interval. */
struct EndpointClass {
  EndpointKind kind = EndpointKind::stopped;
  double t_end = 0.0;      ///< located endpoint time (last reached t for kind == infinite)
  bool unbounded = false;  ///< true when the solution continues past every finite t
  /** |f|, |f'|, |u|, |u'| at the endpoint plus limit estimates such as the
   *  even-derivative values of u used by the oddness diagnostics. */
  std::map<std::string, double> diagnostics;
  std::string note;        ///< human-readable context (stop reason, guard hit, ...)
};

/** A sampled trajectory on a strictly increasing grid. */
struct Profile {
  std::vector<double> ts;          ///< strictly increasing grid
  std::vector<PointState> states;  ///< one full state per node
  SpaceParams params;
  std::optional<EndpointClass> left_end;
  std::optional<EndpointClass> right_end;
  /** Names of derivative columns that were reconstructed by finite-difference
   *  stencils rather than supplied/analytic (flagged in reports). */
  std::vector<std::string> filled_columns;

  std::size_t size() const { return ts.size(); }

  /** Throws MalformedProfile / GridError on structural defects. */
  void validate_structure() const;
};

}  // namespace warpein
