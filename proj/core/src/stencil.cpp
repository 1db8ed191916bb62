/** \file stencil.cpp
 *  \brief Finite-difference weights (Fornberg) and derivative filling.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "warpein/errors.hpp"

namespace warpein {

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> xs,
                                            int max_order) {
  const int nd = static_cast<int>(xs.size()) - 1;
  if (nd < 0) throw ResolutionError("fd_weights: empty node set");
  if (max_order < 0) throw ConstraintViolation("fd_weights: negative order");
  // B. Fornberg's recurrence for weights on arbitrarily spaced nodes.
  std::vector<std::vector<double>> w(max_order + 1,
                                     std::vector<double>(xs.size(), 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - z;
  w[0][0] = 1.0;
  for (int i = 1; i <= nd; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int kk = mn; kk >= 1; --kk)
          w[kk][i] = c1 * (kk * w[kk - 1][i - 1] - c5 * w[kk][i - 1]) / c2;
        w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
      }
      for (int kk = mn; kk >= 1; --kk)
        w[kk][j] = (c4 * w[kk][j] - kk * w[kk - 1][j]) / c3;
      w[0][j] = c4 * w[0][j] / c3;
    }
    c1 = c2;
  }
  return w;
}

namespace {

constexpr int kStencil = 5;

/** Applies an order-d stencil over a 5-node window centered (or clipped) at
 *  node i of grid ts to the column values. */
double stencil_derivative(const std::vector<double>& ts,
                          const std::vector<double>& col, std::size_t i,
                          int order) {
  const std::size_t n = ts.size();
  std::size_t lo = (i >= 2) ? i - 2 : 0;
  if (lo + kStencil > n) lo = n - kStencil;
  const std::span<const double> window(ts.data() + lo, kStencil);
  const auto w = fd_weights(ts[i], window, order);
  double acc = 0.0;
  for (int j = 0; j < kStencil; ++j) acc += w[order][j] * col[lo + j];
  return acc;
}

}  // namespace

void fill_missing_derivatives(Profile& profile,
                              const std::vector<std::string>& missing) {
  if (missing.empty()) return;
  if (profile.size() < kStencil) {
    std::ostringstream msg;
    msg << "derivative filling needs at least " << kStencil
        << " grid nodes; profile has " << profile.size();
    throw ResolutionError(msg.str());
  }
  const std::set<std::string> want(missing.begin(), missing.end());
  for (const std::string& name : want)
    if (name != "du" && name != "ddu" && name != "dddu" && name != "df" &&
        name != "ddf")
      throw MalformedProfile("unknown derivative column: " + name);

  const std::size_t n = profile.size();
  std::vector<double> u_col(n), f_col(n);
  for (std::size_t i = 0; i < n; ++i) {
    u_col[i] = profile.states[i].u;
    f_col[i] = profile.states[i].f;
  }
  for (std::size_t i = 0; i < n; ++i) {
    PointState& st = profile.states[i];
    if (want.count("du")) st.du = stencil_derivative(profile.ts, u_col, i, 1);
    if (want.count("ddu")) st.ddu = stencil_derivative(profile.ts, u_col, i, 2);
    if (want.count("dddu")) st.dddu = stencil_derivative(profile.ts, u_col, i, 3);
    if (want.count("df")) st.df = stencil_derivative(profile.ts, f_col, i, 1);
    if (want.count("ddf")) st.ddf = stencil_derivative(profile.ts, f_col, i, 2);
  }
  for (const std::string& name : want) profile.filled_columns.push_back(name);
  std::sort(profile.filled_columns.begin(), profile.filled_columns.end());
}

}  // namespace warpein
