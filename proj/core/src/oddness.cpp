/** \file oddness.cpp
 *  \brief Parity diagnostics of the warping function at a critical point.
 *
 *  At a critical point t0 the warping function extends to a smooth odd
 *  function of t - t0 with (u')^2 = k there: the even derivatives u, u'',
 *  u'''' vanish while u' stays bounded away from zero.  The check
 *  extrapolates those values to t0 from nearby profile nodes with
 *  finite-difference weights; u'''' is obtained as the first derivative of
 *  the stored u''' column.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "warpein/errors.hpp"
#include "warpein/stencil.hpp"

namespace warpein {

OddnessReport oddness_check(const Profile& profile, double t0, double tol,
                            int width) {
  profile.validate_structure();
  if (tol <= 0)
    throw ConstraintViolation("oddness_check: tolerance must be positive");
  if (width < 5)
    throw ConstraintViolation("oddness_check: need a stencil width of at "
                              "least 5 nodes");
  if (static_cast<int>(profile.size()) < width) {
    std::ostringstream msg;
    msg << "oddness_check: profile has " << profile.size()
        << " nodes but the stencil needs " << width;
    throw ResolutionError(msg.str());
  }

  // nearest `width` nodes to t0
  std::vector<std::size_t> idx(profile.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(profile.ts[a] - t0) < std::abs(profile.ts[b] - t0);
  });
  idx.resize(static_cast<std::size_t>(width));
  std::sort(idx.begin(), idx.end());

  std::vector<double> xs(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) xs[i] = profile.ts[idx[i]];
  const auto w = fd_weights(t0, xs, 1);

  OddnessReport rep;
  rep.t0 = t0;
  rep.tol = tol;
  rep.width = width;
  rep.u_at = 0.0;
  rep.du_at = 0.0;
  rep.ddu_at = 0.0;
  rep.d4u_at = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const PointState& st = profile.states[idx[i]];
    rep.u_at += w[0][i] * st.u;
    rep.du_at += w[0][i] * st.du;
    rep.ddu_at += w[0][i] * st.ddu;
    rep.d4u_at += w[1][i] * st.dddu;  // d/dt of the u''' column
  }
  rep.du_sq_minus_k = rep.du_at * rep.du_at - profile.params.k;
  rep.pass = std::abs(rep.u_at) <= tol && std::abs(rep.ddu_at) <= tol &&
             std::abs(rep.d4u_at) <= tol &&
             std::abs(rep.du_sq_minus_k) <= tol && std::abs(rep.du_at) > tol;
  return rep;
}

}  // namespace warpein
