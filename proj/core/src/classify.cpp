/** \file classify.cpp
 *  \brief Endpoint classification and two-sided maximal-interval exploration.
 *
 *  An endpoint is a boundary point when f vanishes with f' bounded away
 *  from zero, a critical point when f' and u vanish with u' bounded away
 *  from zero (minimum or maximum decided by the sign of f * f'' from the
 *  last regular state), and an infinite end when an unbounded span is
 *  exhausted without a structural event.  States where both f and f'
 *  vanish within tolerance are refused as ambiguous rather than guessed.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/solver.hpp"

#include <cmath>
#include <sstream>

#include "warpein/errors.hpp"

namespace warpein {

EndpointClass classify_endpoint(const ClassifyInputs& in,
                                const SpaceParams& params) {
  params.validate();
  if (in.tol <= 0)
    throw ConstraintViolation("classify_endpoint: tolerance must be positive");
  const PointState& st = in.state;
  EndpointClass out;
  out.t_end = st.t;
  out.diagnostics["abs_f"] = std::abs(st.f);
  out.diagnostics["abs_df"] = std::abs(st.df);
  out.diagnostics["abs_u"] = std::abs(st.u);
  out.diagnostics["abs_du"] = std::abs(st.du);
  if (std::isfinite(in.approach_defect))
    out.diagnostics["approach_defect"] = in.approach_defect;

  const bool f_small = std::abs(st.f) <= in.tol;
  const bool df_small = std::abs(st.df) <= in.tol;
  const bool u_small = std::abs(st.u) <= in.tol;
  const bool du_small = std::abs(st.du) <= in.tol;

  if (f_small && df_small) {
    std::ostringstream msg;
    msg << "classify_endpoint: ambiguous endpoint at t = " << st.t
        << ": |f| = " << std::abs(st.f) << " and |f'| = " << std::abs(st.df)
        << " both fall inside the tolerance " << in.tol
        << "; cannot distinguish a boundary point from a degenerate state";
    throw AmbiguousEndpoint(msg.str());
  }

  if (f_small) {
    out.kind = EndpointKind::boundary;
    out.diagnostics["boundary_residual"] = std::abs(st.ddf) + std::abs(st.du);
    out.diagnostics["ddu_limit"] = st.ddu;
    out.note = in.note;
    if (!du_small) {
      out.note += (out.note.empty() ? "" : "; ");
      out.note +=
          "warning: u' did not vanish within tolerance where f = 0 — the "
          "profile violates the boundary structure";
    }
    return out;
  }

  if (df_small && u_small) {
    if (du_small) {
      std::ostringstream msg;
      msg << "classify_endpoint: degenerate critical signature at t = " << st.t
          << ": u, f' and u' all vanish within tolerance " << in.tol;
      throw AmbiguousEndpoint(msg.str());
    }
    const double ddf_ref = in.ddf_reference.value_or(st.ddf);
    const double sign_f = (st.f >= 0) ? 1.0 : -1.0;
    out.kind = (sign_f * ddf_ref < 0) ? EndpointKind::critical_max
                                      : EndpointKind::critical_min;
    out.diagnostics["du_sq_minus_k"] = st.du * st.du - params.k;
    out.diagnostics["ddf_reference"] = ddf_ref;
    out.diagnostics["f_at"] = st.f;
    out.note = in.note;
    return out;
  }

  if (in.span_unbounded && in.span_exhausted && !in.had_event) {
    out.kind = EndpointKind::infinite;
    out.unbounded = true;
    out.note = in.note;
    return out;
  }

  out.kind = EndpointKind::stopped;
  out.note = in.note;
  if (df_small && !u_small) {
    out.note += (out.note.empty() ? "" : "; ");
    out.note += "f' vanished with u away from zero (an interior extremum of "
                "f, not a structural endpoint)";
  }
  return out;
}

Exploration explore(const IVPState& interior, const SpaceParams& params,
                    const IntegrateOptions& options, double t_left,
                    double t_right) {
  if (!(t_left < interior.t) || !(t_right > interior.t))
    throw ConstraintViolation(
        "explore: need t_left < interior.t < t_right (use infinities for an "
        "unbounded search)");
  Exploration ex;
  ex.backward = integrate(interior, params, interior.t, t_left, options);
  ex.forward = integrate(interior, params, interior.t, t_right, options);
  ex.left = ex.backward.endpoint;
  ex.right = ex.forward.endpoint;

  const EndpointKind lk = ex.left.kind;
  const EndpointKind rk = ex.right.kind;
  const bool lb = lk == EndpointKind::boundary;
  const bool rb = rk == EndpointKind::boundary;
  const bool lc =
      lk == EndpointKind::critical_min || lk == EndpointKind::critical_max;
  const bool rc =
      rk == EndpointKind::critical_min || rk == EndpointKind::critical_max;
  const bool li = lk == EndpointKind::infinite;
  const bool ri = rk == EndpointKind::infinite;

  if (lc || rc)
    ex.completeness_case =
        "closes across a critical point: the profile extends through u = 0 "
        "by even/odd reflection of the warping data";
  else if (lb && rb)
    ex.completeness_case = "compact with boundary on both sides";
  else if (lb != rb)
    ex.completeness_case = "boundary on one side, " +
                           std::string((lb ? ri : li) ? "complete" : "open") +
                           " on the other";
  else if (li && ri)
    ex.completeness_case = "complete without boundary (both ends infinite)";
  else
    ex.completeness_case =
        "undetermined: integration stopped before a structural endpoint";
  return ex;
}

}  // namespace warpein
