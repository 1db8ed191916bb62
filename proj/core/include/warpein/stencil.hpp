/** \file stencil.hpp
 *  \brief Finite-difference weights on arbitrary nodes and derivative
 *         filling for profiles with missing columns.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <span>
#include <vector>

#include "warpein/types.hpp"

namespace warpein {

/** Finite-difference weights on arbitrary nodes (Fornberg's recurrence).
 *
 *  Returns a (max_order+1) x xs.size() table W where row r holds the weights
 *  approximating the r-th derivative at z: d^r/dt^r y(z) ~= sum_j W[r][j] y_j.
 *  Exact for polynomials of degree < xs.size(). */
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> xs,
                                            int max_order);

/** Fills the derivative columns named in \p missing (any of du, ddu, dddu,
 *  df, ddf) from the u / f columns by 5-point stencils (one-sided at the
 *  ends), recording them in profile.filled_columns.
 *
 *  Accuracy: 4th order for first and second derivatives, 2nd order for u'''
 *  (a 5-point stencil cannot do better for a third derivative); reports flag
 *  filled columns so downstream verdicts can be read accordingly.
 *  Requires at least 5 nodes (throws ResolutionError). */
void fill_missing_derivatives(Profile& profile,
                              const std::vector<std::string>& missing);

}  // namespace warpein
