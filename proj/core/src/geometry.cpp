/** \file geometry.cpp
 *  \brief Curvature and eigenvalue formulas (see geometry.hpp).
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/geometry.hpp"

#include <cmath>
#include <sstream>

#include "warpein/errors.hpp"

namespace warpein {

void SpaceParams::validate() const {
  if (n < 2)
    throw ConstraintViolation(
        "base dimension n must be an integer >= 2 (one-dimensional bases are out of scope)");
  if (m < 2)
    throw ConstraintViolation("fiber parameter m must be an integer >= 2");
  if (!std::isfinite(lambda) || !std::isfinite(k))
    throw ConstraintViolation("lambda and k must be finite");
}

std::string to_string(EndpointKind kind) {
  switch (kind) {
    case EndpointKind::boundary: return "boundary";
    case EndpointKind::critical_min: return "critical_min";
    case EndpointKind::critical_max: return "critical_max";
    case EndpointKind::infinite: return "infinite";
    case EndpointKind::stopped: return "stopped";
  }
  return "stopped";
}

void Profile::validate_structure() const {
  if (ts.size() != states.size())
    throw MalformedProfile("profile grid and state arrays differ in length");
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1]))
      throw GridError("profile grid must be strictly increasing");
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (!std::isfinite(ts[i])) throw MalformedProfile("non-finite grid value");
}

namespace {

void require_u_nonzero(const PointState& state, const char* op) {
  if (state.u == 0.0) {
    std::ostringstream msg;
    msg << op << ": u = 0 is a degenerate (endpoint-only) state";
    throw SingularState(msg.str());
  }
}

}  // namespace

double ricci_radial(const PointState& state, const SpaceParams& params) {
  require_u_nonzero(state, "ricci_radial");
  return -(params.n - 1) * state.ddu / state.u;
}

double ricci_tangential(const PointState& state, const SpaceParams& params) {
  require_u_nonzero(state, "ricci_tangential");
  const double n2 = params.n - 2;
  return (n2 * (params.k - state.du * state.du) - state.u * state.ddu) /
         (state.u * state.u);
}

double scalar_curvature(const PointState& state, const SpaceParams& params) {
  return ricci_radial(state, params) +
         (params.n - 1) * ricci_tangential(state, params);
}

std::pair<double, double> hess_components(const PointState& state) {
  require_u_nonzero(state, "hess_components");
  return {state.ddf, state.df * state.du / state.u};
}

double laplacian_f(const PointState& state, const SpaceParams& params) {
  require_u_nonzero(state, "laplacian_f");
  return state.ddf + (params.n - 1) * (state.du / state.u) * state.df;
}

double mu_invariant(const PointState& state, const SpaceParams& params) {
  const double lap = laplacian_f(state, params);
  return state.f * lap + (params.m - 1) * state.df * state.df +
         params.lambda * state.f * state.f;
}

double bakry_emery_radial(const PointState& state, const SpaceParams& params) {
  if (state.f == 0.0)
    throw SingularState("bakry_emery_radial: f = 0 (boundary state)");
  return ricci_radial(state, params) - params.m * state.ddf / state.f -
         params.lambda;
}

EigenData eigen_data(const PointState& state, const SpaceParams& params,
                     double gap_tol, double route_tol) {
  EigenData data;
  data.gamma1 = ricci_radial(state, params);
  data.gamma2 = ricci_tangential(state, params);
  data.scal = data.gamma1 + (params.n - 1) * data.gamma2;
  const double shift = data.scal / (2.0 * (params.n - 1));
  data.sigma1 = data.gamma1 - shift;
  data.sigma2 = data.gamma2 - shift;
  data.rho = ((params.n - 1) * params.lambda - data.scal) / (params.m - 1);
  data.p1 = data.gamma1 - data.rho;
  data.p2 = data.gamma2 - data.rho;
  auto [mu1, mu2] = hess_components(state);
  data.mu1 = mu1;
  data.mu2 = mu2;
  data.mu1_reduced = (state.f / params.m) * (data.gamma1 - params.lambda);
  data.mu2_reduced = (state.f / params.m) * (data.gamma2 - params.lambda);
  data.kbar = (params.lambda - data.rho) / params.m;
  data.route_gap = std::max(std::abs(data.mu1 - data.mu1_reduced),
                            std::abs(data.mu2 - data.mu2_reduced));
  data.in_O = std::abs(state.df) > gap_tol &&
              std::abs(data.sigma1 - data.sigma2) > gap_tol;
  if (data.route_gap > route_tol) {
    std::ostringstream msg;
    msg << "eigen_data: Hessian eigenvalues disagree with the reduced-form "
           "evaluation by "
        << data.route_gap << " (> " << route_tol
        << "); the input state does not satisfy the defining system";
    throw ConsistencyError(msg.str());
  }
  return data;
}

}  // namespace warpein
