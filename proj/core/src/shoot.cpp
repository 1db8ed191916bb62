/** \file shoot.cpp
 *  \brief Scalar shooting over one free initial constant.
 *
 *  The mismatch is either an anchor residual (a state component minus a
 *  required value at a fixed time, linearly extended when the trajectory
 *  stops short) or an event-time residual (the time at which the targeted
 *  structural event fires minus the requested time, with a projected
 *  surrogate when it does not fire).  The root solve is a standard Brent
 *  bisection / inverse-quadratic hybrid over the supplied bracket.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/solver.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "warpein/errors.hpp"

namespace warpein {

namespace {

struct Candidate {
  double mismatch = std::numeric_limits<double>::quiet_NaN();
  Solution sol;
};

double component_value(const IVPState& s, const std::string& comp) {
  if (comp == "u") return s.u;
  if (comp == "du") return s.du;
  if (comp == "f") return s.f;
  if (comp == "df") return s.df;
  throw ConstraintViolation("shoot: unknown anchor component '" + comp +
                            "' (expected u, du, f or df)");
}

double component_slope(const IVPState& s, const SpaceParams& p,
                       const std::string& comp) {
  if (comp == "u") return s.du;
  if (comp == "f") return s.df;
  try {
    const IVPDerivs d = ivp_rhs(s, p);
    if (comp == "du") return d.ddu;
    if (comp == "df") return d.ddf;
  } catch (const SingularState&) {
    return 0.0;  // flat extension from a singular stop
  }
  return 0.0;
}

bool event_matches_target(EventType type, EndpointKind target) {
  switch (target) {
    case EndpointKind::boundary: return type == EventType::f_zero;
    case EndpointKind::critical_min:
    case EndpointKind::critical_max: return type == EventType::u_zero;
    default: return false;
  }
}

/** Builds the start state for one candidate parameter value and runs the
 *  trajectory toward t_end. */
Candidate run_candidate(const ShootingProblem& pr, double value) {
  const int modes = (pr.interior_start ? 1 : 0) + (pr.boundary_start ? 1 : 0) +
                    (pr.critical_start ? 1 : 0);
  if (modes != 1)
    throw ConstraintViolation(
        "shoot: exactly one of interior_start, boundary_start or "
        "critical_start must be set");

  IntegrateOptions opts = pr.options;
  IVPState init;
  double t0;
  if (pr.interior_start) {
    init = *pr.interior_start;
    if (pr.free_parameter == "u0") init.u = value;
    else if (pr.free_parameter == "du0") init.du = value;
    else if (pr.free_parameter == "f0") init.f = value;
    else if (pr.free_parameter == "df0") init.df = value;
    else
      throw ConstraintViolation("shoot: free parameter '" + pr.free_parameter +
                                "' is not an interior start component "
                                "(expected u0, du0, f0 or df0)");
    t0 = init.t;
  } else if (pr.boundary_start) {
    BoundaryStart b = *pr.boundary_start;
    if (pr.free_parameter == "s") b.s = value;
    else if (pr.free_parameter == "u0") b.u0 = value;
    else
      throw ConstraintViolation("shoot: free parameter '" + pr.free_parameter +
                                "' is not a boundary start constant "
                                "(expected s or u0)");
    const BoundarySeries series = boundary_series(b.t0, b.u0, b.s, pr.params);
    const int dir = (pr.t_end >= b.t0) ? 1 : -1;
    init = series.eval_ivp(dir * opts.singular_delta);
    t0 = init.t;
  } else {
    CriticalStart c = *pr.critical_start;
    if (pr.free_parameter == "P") c.P = value;
    else if (pr.free_parameter == "F") c.F = value;
    else
      throw ConstraintViolation(
          "shoot: free parameter '" + pr.free_parameter +
          "' is not a critical start constant (expected P or F; note the "
          "potential scale F is a gauge and rarely a useful unknown)");
    const CriticalSeries series = critical_series(c.t0, c.w, c.F, c.P,
                                                  pr.params);
    const int dir = (pr.t_end >= c.t0) ? 1 : -1;
    init = series.eval_ivp(dir * opts.singular_delta);
    t0 = init.t;
  }

  Candidate cand;
  cand.sol = integrate(init, pr.params, t0, pr.t_end, opts);
  const Solution& sol = cand.sol;
  const int dir = (pr.t_end >= t0) ? 1 : -1;

  if (pr.anchor) {
    const Anchor& an = *pr.anchor;
    const double reach = (sol.last.t - an.t) * dir;
    if (reach >= 0) {
      cand.mismatch =
          component_value(sol.sample(an.t), an.component) - an.value;
    } else {
      // stopped short: linear extension from the final state
      const double val = component_value(sol.last, an.component) +
                         component_slope(sol.last, pr.params, an.component) *
                             (an.t - sol.last.t);
      cand.mismatch = val - an.value;
    }
    return cand;
  }

  if (pr.target) {
    if (!pr.t_target)
      throw ConstraintViolation(
          "shoot: an event-kind target needs t_target (or use an anchor)");
    std::optional<double> t_ev;
    for (const Event& ev : sol.events)
      if (event_matches_target(ev.type, *pr.target)) {
        t_ev = ev.t;
        break;
      }
    if (t_ev) {
      cand.mismatch = (*t_ev - *pr.t_target) * dir;
    } else {
      // surrogate: project the missing zero past the stop from the final
      // state's own slope, so the mismatch stays continuous across the
      // threshold where the event starts to fire
      const IVPState& last = sol.last;
      double g, gp;
      if (*pr.target == EndpointKind::boundary) {
        g = last.f;
        gp = last.df;
      } else {
        g = last.u;
        gp = last.du;
      }
      double t_est;
      if (gp != 0.0 && std::isfinite(g / gp))
        t_est = last.t + std::abs(g / gp) * dir;
      else
        t_est = last.t + std::abs(pr.t_end - t0) * dir;
      cand.mismatch = (t_est - *pr.t_target) * dir;
    }
    return cand;
  }

  throw ConstraintViolation("shoot: set either an anchor or a target kind");
}

}  // namespace

ShootResult shoot(const ShootingProblem& pr) {
  pr.params.validate();
  if (!(pr.bracket_lo < pr.bracket_hi))
    throw ConstraintViolation("shoot: need bracket_lo < bracket_hi");
  if (pr.tol <= 0) throw ConstraintViolation("shoot: tol must be positive");
  if (pr.max_iter < 3)
    throw ConstraintViolation("shoot: max_iter must be at least 3");

  int evals = 0;
  auto g = [&](double x) {
    ++evals;
    return run_candidate(pr, x);
  };

  double a = pr.bracket_lo, b = pr.bracket_hi;
  Candidate ca = g(a), cb = g(b);
  double fa = ca.mismatch, fb = cb.mismatch;
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw NumericalError("shoot: non-finite mismatch at a bracket end");

  auto package = [&](double x, Candidate&& c) {
    ShootResult res;
    res.parameter = x;
    res.mismatch = c.mismatch;
    res.iterations = evals;
    res.solution = std::move(c.sol);
    return res;
  };

  if (std::abs(fa) <= pr.tol) return package(a, std::move(ca));
  if (std::abs(fb) <= pr.tol) return package(b, std::move(cb));
  if (fa * fb > 0) {
    std::ostringstream msg;
    msg << "shoot: mismatch has the same sign at both bracket ends (g(" << a
        << ") = " << fa << ", g(" << b << ") = " << fb
        << "); widen or move the bracket";
    throw BracketError(msg.str());
  }

  // Brent's method
  double c = a, fc = fa, d = b - a, e = d;
  Candidate cbest = (std::abs(fa) < std::abs(fb)) ? std::move(ca)
                                                  : std::move(cb);
  double xbest = (std::abs(fa) < std::abs(fb)) ? a : b;
  while (evals < pr.max_iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * pr.tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= pr.tol) break;
    if (std::abs(xm) <= tol1) break;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic / secant candidate
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    Candidate cn = g(b);
    fb = cn.mismatch;
    if (!std::isfinite(fb))
      throw NumericalError("shoot: non-finite mismatch during the root solve");
    if (std::abs(fb) < std::abs(cbest.mismatch)) {
      cbest = std::move(cn);
      xbest = b;
    }
    if (fb * fc > 0) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
  }

  if (std::abs(cbest.mismatch) > pr.tol && evals >= pr.max_iter) {
    std::ostringstream msg;
    msg << "shoot: no root to tolerance " << pr.tol << " within " << pr.max_iter
        << " trajectory evaluations; best |mismatch| = "
        << std::abs(cbest.mismatch) << " at parameter " << xbest;
    throw MaxIterations(msg.str(), xbest);
  }
  // ensure the reported mismatch/solution correspond to the final b when it
  // beat the tracked best (loop exit on fb small)
  if (std::abs(cbest.mismatch) > pr.tol) {
    Candidate cfinal = g(xbest);
    cbest = std::move(cfinal);
  }
  return package(xbest, std::move(cbest));
}

}  // namespace warpein
