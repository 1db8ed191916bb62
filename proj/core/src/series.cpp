/** \file series.cpp
 *  \brief Taylor expansions on the two degenerate manifolds of the system.
 *
 *  The right-hand side of the reduced system divides by f*u, so the two
 *  structural endpoints — f -> 0 (boundary) and u -> 0 (critical point) —
 *  cannot be stepped into directly.  Power-series solutions through fourth /
 *  fifth order, derived symbolically from the residual equations, provide
 *  starts on and landings onto these manifolds.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/solver.hpp"

#include <cmath>
#include <sstream>

#include "warpein/errors.hpp"

namespace warpein {

BoundarySeries boundary_series(double t0, double u0, double s,
                               const SpaceParams& params) {
  params.validate();
  if (!(u0 > 0))
    throw InvalidInitialState(
        "boundary expansion requires u > 0 at the boundary point");
  if (s == 0.0)
    throw InvalidInitialState(
        "boundary expansion requires f' != 0 at the boundary point "
        "(the potential gradient never vanishes on the boundary)");
  BoundarySeries bs;
  bs.t0 = t0;
  bs.u0 = u0;
  bs.s = s;
  bs.params = params;
  const double n = params.n, m = params.m, k = params.k, lam = params.lambda;
  const double u0sq = u0 * u0;
  // u''(t0): the tangential condition at a boundary point forces
  //   u'' = (k(n-2) - lambda u0^2) / (u0 (m+1))
  bs.ddu0 = (k * (n - 2) - lam * u0sq) / (u0 * (m + 1));
  // limit of a = (n-1)/m u''/u + lambda/m at the boundary
  bs.a0 = ((n - 1) * bs.ddu0 / u0 + lam) / m;
  bs.dddf0 = -bs.a0 * s;
  // u''''(t0), from the fourth-order expansion of the residual system
  bs.d4u0 = (-k * (n - 2) + lam * u0sq) *
            (3 * k * m * (n - 2) + k * (4 * n * n - 15 * n + 14) +
             lam * u0sq * (m - 4 * n + 11)) /
            (u0 * u0sq * (m + 1) * (m + 1) * (m + 3));
  return bs;
}

PointState BoundarySeries::eval(double tau) const {
  PointState st;
  st.t = t0 + tau;
  const double t2 = tau * tau;
  st.u = u0 + 0.5 * ddu0 * t2 + d4u0 * t2 * t2 / 24.0;
  st.du = ddu0 * tau + d4u0 * t2 * tau / 6.0;
  st.ddu = ddu0 + 0.5 * d4u0 * t2;
  st.dddu = d4u0 * tau;
  st.f = s * tau + dddf0 * t2 * tau / 6.0;
  st.df = s + 0.5 * dddf0 * t2;
  st.ddf = dddf0 * tau;
  return st;
}

IVPState BoundarySeries::eval_ivp(double tau) const {
  const PointState st = eval(tau);
  return {st.t, st.u, st.du, st.f, st.df};
}

CriticalSeries critical_series(double t0, double w, double F, double P,
                               const SpaceParams& params) {
  params.validate();
  if (w == 0.0)
    throw InvalidInitialState(
        "critical expansion requires u' != 0 at the critical point");
  if (F == 0.0)
    throw InvalidInitialState(
        "critical expansion requires f != 0 at the critical point");
  if (std::abs(w * w - params.k) > 1e-9 * std::max(1.0, std::abs(params.k))) {
    std::ostringstream msg;
    msg << "critical expansion requires u'(t0)^2 = k; got u'(t0)^2 = " << w * w
        << " with k = " << params.k;
    throw InvalidInitialState(msg.str());
  }
  CriticalSeries cs;
  cs.t0 = t0;
  cs.w = w;
  cs.F = F;
  cs.P = P;
  cs.params = params;
  const double n = params.n, m = params.m, lam = params.lambda;
  // f''(t0) = -F (P(n-1) + lambda w) / (m w)
  cs.G2 = -F * (P * (n - 1) + lam * w) / (m * w);
  // f''''(t0)
  cs.H4 = -F * (P * (n - 1) + lam * w) *
          (4 * P * m * (n - 1) + 3 * P * (n - 1) * (n - 2) +
           3 * lam * w * (n - 2)) /
          (m * m * w * w * (n + 2));
  // u^(5)(t0)
  cs.Q5 = (13 * P * P * m * n - 10 * P * P * m + 12 * P * P * n * n -
           24 * P * P * n + 12 * P * P + 12 * P * lam * m * w +
           24 * P * lam * n * w - 24 * P * lam * w + 12 * lam * lam * w * w) /
          (m * w * (n + 2));
  return cs;
}

PointState CriticalSeries::eval(double tau) const {
  PointState st;
  st.t = t0 + tau;
  const double t2 = tau * tau;
  st.u = w * tau + P * t2 * tau / 6.0 + Q5 * t2 * t2 * tau / 120.0;
  st.du = w + 0.5 * P * t2 + Q5 * t2 * t2 / 24.0;
  st.ddu = P * tau + Q5 * t2 * tau / 6.0;
  st.dddu = P + 0.5 * Q5 * t2;
  st.f = F + 0.5 * G2 * t2 + H4 * t2 * t2 / 24.0;
  st.df = G2 * tau + H4 * t2 * tau / 6.0;
  st.ddf = G2 + 0.5 * H4 * t2;
  return st;
}

IVPState CriticalSeries::eval_ivp(double tau) const {
  const PointState st = eval(tau);
  return {st.t, st.u, st.du, st.f, st.df};
}

}  // namespace warpein
