/** \file solver.hpp
 *  \brief Initial-value integration of the coupled (u, f) system, event
 *         detection, endpoint classification, series expansions at
 *         degenerate points, oddness diagnostics and scalar shooting.
 *
 *  The closed first-order system integrated here is
 *      u'' = [-m f' u' u - lambda f u^2 + f (n-2)(k - u'^2)] / (f u),
 *      f'' = -a f,   a = (n-1)/m * u''/u + lambda/m,
 *  i.e. the tangential condition solved for u'' plus the radial condition.
 *  Both f -> 0 and u -> 0 are singular for the right-hand side; the
 *  integrator hands off to Taylor/series expansions inside a small window
 *  around such events instead of stepping into them.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "warpein/types.hpp"

namespace warpein {

/** Reduced integration state (t, u, u', f, f'). */
struct IVPState {
  double t = 0;
  double u = 0;
  double du = 0;
  double f = 0;
  double df = 0;
};

/** Full derivative data of the reduced system at a state. */
struct IVPDerivs {
  double du = 0;    ///< u'
  double ddu = 0;   ///< u'' from the tangential condition
  double df = 0;    ///< f'
  double ddf = 0;   ///< f'' = -a f from the radial condition
  double dddu = 0;  ///< u''' by analytic differentiation of the u'' quotient
  double dddf = 0;  ///< f''' = -(a' f + a f')
};

/** Evaluates the right-hand side (and its analytic t-derivative).
 *  Throws SingularState when f*u is (numerically) zero or the quotient is
 *  not finite — the caller must treat that as an endpoint. */
IVPDerivs ivp_rhs(const IVPState& state, const SpaceParams& params);

/** Expands an IVPState into a full PointState using the analytic RHS
 *  (never finite differences). */
PointState to_point_state(const IVPState& state, const SpaceParams& params);

/* ------------------------------------------------------------------ */
/*  Series expansions at the two degenerate manifolds                  */
/* ------------------------------------------------------------------ */

/** Taylor data on the boundary manifold f = 0 (where u' = f'' = 0 and
 *  f' = s != 0 necessarily).  Coefficients through fourth order in tau. */
struct BoundarySeries {
  double t0 = 0;   ///< boundary time
  double u0 = 1;   ///< u(t0) > 0
  double s = 1;    ///< f'(t0) != 0
  // derived coefficients
  double ddu0 = 0;   ///< u''(t0) = (k(n-2) - lambda u0^2) / (u0 (m+1))
  double d4u0 = 0;   ///< u''''(t0)
  double a0 = 0;     ///< limit of a at the boundary
  double dddf0 = 0;  ///< f'''(t0) = -a0 s
  SpaceParams params;

  PointState eval(double tau) const;     ///< full state at t0 + tau
  IVPState eval_ivp(double tau) const;   ///< reduced state at t0 + tau
};

/** Builds the boundary expansion; requires u0 > 0 and s != 0
 *  (throws InvalidInitialState otherwise). */
BoundarySeries boundary_series(double t0, double u0, double s,
                               const SpaceParams& params);

/** Taylor data at a critical point u = 0 (where f' = 0, u' = w with
 *  w^2 = k, and f = F > 0).  The third derivative P = u'''(t0) is the free
 *  parameter of the local one-parameter family. */
struct CriticalSeries {
  double t0 = 0;
  double w = 1;   ///< u'(t0); the fiber constraint forces w^2 = k
  double F = 1;   ///< f(t0) != 0
  double P = 0;   ///< u'''(t0), free
  // derived coefficients
  double G2 = 0;  ///< f''(t0) = -F (P(n-1) + lambda w) / (m w)
  double H4 = 0;  ///< f''''(t0)
  double Q5 = 0;  ///< u^(5)(t0)
  SpaceParams params;

  PointState eval(double tau) const;
  IVPState eval_ivp(double tau) const;
};

/** Builds the critical expansion; requires w != 0, F != 0 and w^2 = k within
 *  a relative 1e-9 (throws InvalidInitialState otherwise). */
CriticalSeries critical_series(double t0, double w, double F, double P,
                               const SpaceParams& params);

/* ------------------------------------------------------------------ */
/*  Events and integration                                             */
/* ------------------------------------------------------------------ */

enum class EventType { f_zero, df_zero, u_zero, du_zero };

std::string to_string(EventType type);

/** A located zero crossing of one of the four monitored quantities. */
struct Event {
  EventType type{};
  double t = 0;
  IVPState state;        ///< interpolated/landed state at the event
  bool stopped = false;  ///< integration terminated here
  std::string note;
};

struct IntegrateOptions {
  double ode_tol = 1e-10;        ///< adaptive step tolerance (abs and rel)
  double event_tol = 1e-12;      ///< event location tolerance in t
  double singular_delta = 1e-6;  ///< series-handoff window around f->0 / u->0
  double fixed_step = 0;         ///< > 0 disables adaptivity (order studies)
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0;       ///< 0 chooses automatically
  bool stop_on_f_zero = true;    ///< stop at f->0; false crosses it by series restart
  bool stop_on_df_zero = false;  ///< stop at f'->0 sign crossings (u > 0)
  bool stop_on_du_zero = false;  ///< stop at u'->0 sign crossings
  // u -> 0 always terminates continuation (the warped metric degenerates).
  double t_cap = 1e4;            ///< |t| cap for unbounded spans
  double guard_norm = 1e12;      ///< divergence guard on |u|, |f|
  double decay_floor = 1e-10;    ///< asymptotic-decay guard (unbounded spans)
  std::vector<double> grid;      ///< caller grid for dense sampling (optional)
  int grid_nodes = 0;            ///< > 0: uniform dense sampling of realized span
  int max_crossings = 8;         ///< f->0 crossings allowed in crossing mode
  double class_tol = 1e-8;       ///< endpoint classification tolerance
  /// First-integral stabilization: after each accepted step, re-solve u' from
  /// the conserved quantity mu fixed by the initial state (quadratic in u',
  /// nearest root).  Approaching f -> 0 or u -> 0 the linearized flow has an
  /// unstable mode in u' with rate m f'/f (resp. 2(n-2) u'/u), so raw errors
  /// grow like tol / dist^2; the projection pins them at tol / dist, which is
  /// what makes Taylor landings on the degenerate manifolds accurate.
  bool mu_projection = true;
};

/** The distance at which singular series data hands off to the regular
 *  integrator: max(singular_delta, min(5e-3, (6 ode_tol)^{1/4})).
 *
 *  Starting (or restarting) closer than this is counterproductive: near
 *  u -> 0 the right-hand side cancels catastrophically in (k - u'^2) — the
 *  true value is O(u^2) while rounding is O(eps), so a handoff at distance
 *  d injects eps/d^2 relative noise — while the series truncation only
 *  grows like d^4.  Use this distance when seeding integrate() from
 *  boundary_series / critical_series data. */
double series_handoff_delta(const IntegrateOptions& options);

/** One accepted step's quintic-Hermite dense-output record: values plus
 *  analytic first and second derivatives of (u, u', f, f') at both ends. */
struct DenseSegment {
  double t0 = 0, t1 = 0;
  std::array<double, 4> y0{}, dy0{}, ddy0{};
  std::array<double, 4> y1{}, dy1{}, ddy1{};
  /** Quintic two-point Hermite evaluation of component comp at t. */
  double eval(int comp, double t) const;
  /** Derivative of the interpolant (for event refinement). */
  double eval_derivative(int comp, double t) const;
};

/** Result of one directed integration run. */
struct Solution {
  Profile profile;             ///< sampled on the requested grid (or step nodes)
  std::vector<Event> events;   ///< located events, in travel order
  EndpointClass endpoint;      ///< classification at the travel-direction end
  IVPState last;               ///< final state
  SpaceParams params;
  bool reached_span_end = false;
  std::string stop_reason;
  long steps_accepted = 0, steps_rejected = 0, rhs_evaluations = 0;
  std::vector<DenseSegment> dense;  ///< continuous output over the realized span

  /** Dense-output sample anywhere in the realized span (throws GridError
   *  outside it). */
  IVPState sample(double t) const;
  /** Same, expanded to the full state via the analytic RHS. */
  PointState sample_full(double t) const;
};

/** Integrates from a strictly interior state over [t0, t1] (t1 may be
 *  +-infinity).  Adaptive embedded Runge-Kutta 5(4) with quintic-Hermite
 *  dense output; events are located by sign-crossing detection only (a
 *  quantity identically zero never fires) to tolerance event_tol; within
 *  singular_delta of f -> 0 or u -> 0 the run lands on the degenerate
 *  manifold by Taylor continuation instead of stepping into the singular
 *  quotient.  Throws InvalidInitialState when the start violates strict
 *  interiority (use boundary_series / critical_series starts instead). */
Solution integrate(const IVPState& initial, const SpaceParams& params,
                   double t0, double t1, const IntegrateOptions& options = {});

/* ------------------------------------------------------------------ */
/*  Endpoint classification                                            */
/* ------------------------------------------------------------------ */

struct ClassifyInputs {
  PointState state;             ///< endpoint state (singular limits substituted)
  bool span_exhausted = false;  ///< integration ran out of span (no event)
  bool span_unbounded = false;  ///< the requested span was unbounded
  bool had_event = false;       ///< a located event terminated the run
  double tol = 1e-8;
  /** f'' at the last regular state before a singular handoff; used for the
   *  min/max decision at critical points. */
  std::optional<double> ddf_reference;
  std::string note;
  /** Measured mismatch between the trajectory and the local structural
   *  series at a singular-manifold landing (NaN when not applicable). */
  double approach_defect = std::numeric_limits<double>::quiet_NaN();
};

/** Classifies an endpoint state:
 *    boundary      when |f| <= tol and |f'| > tol,
 *    critical_*    when |f'| <= tol, |u| <= tol and |u'| > tol
 *                  (max when sign(f) f'' < 0, else min),
 *    infinite      when an unbounded span was exhausted without events,
 *    stopped       otherwise.
 *  Throws AmbiguousEndpoint when |f| <= tol and |f'| <= tol together (or a
 *  critical signature with |u'| <= tol), which no structural endpoint
 *  permits. */
EndpointClass classify_endpoint(const ClassifyInputs& inputs,
                                const SpaceParams& params);

/* ------------------------------------------------------------------ */
/*  Oddness diagnostics at critical points                             */
/* ------------------------------------------------------------------ */

/** Extrapolation-based test that u is odd about a critical time t0 with
 *  (u')^2 = k there. */
struct OddnessReport {
  double t0 = 0;
  double u_at = 0;     ///< extrapolated u(t0)      (should vanish)
  double du_at = 0;    ///< extrapolated u'(t0)     (should satisfy (u')^2 = k)
  double ddu_at = 0;   ///< extrapolated u''(t0)    (should vanish)
  double d4u_at = 0;   ///< extrapolated u''''(t0)  (should vanish)
  double du_sq_minus_k = 0;
  double tol = 0;
  int width = 0;       ///< stencil width used
  bool pass = false;
};

/** Extrapolates the profile columns one-sidedly to t0 with a width-node
 *  polynomial stencil (u'''' is taken as the stencil derivative of the u'''
 *  column).  pass requires |u|, |u''|, |u''''| <= tol, |(u')^2 - k| <= tol
 *  and |u'| > tol.  Throws ResolutionError when fewer than width usable
 *  nodes exist. */
OddnessReport oddness_check(const Profile& profile, double t0,
                            double tol = 1e-6, int width = 8);

/* ------------------------------------------------------------------ */
/*  Scalar shooting                                                    */
/* ------------------------------------------------------------------ */

/** Dirichlet-type anchor: require component (u, du, f or df) to take the
 *  given value at time t. */
struct Anchor {
  double t = 0;
  std::string component;  ///< "u", "du", "f" or "df"
  double value = 0;
};

/** Start data on the boundary manifold with slope s = f'(t0) (free or fixed). */
struct BoundaryStart {
  double t0 = 0, u0 = 1, s = 1;
};

/** Start data at a critical point; P = u'''(t0) parametrizes the local
 *  family (the potential scale F is a gauge freedom of the linear system in
 *  f and cannot serve as a shooting unknown). */
struct CriticalStart {
  double t0 = 0, w = 1, F = 1, P = 0;
};

struct ShootingProblem {
  SpaceParams params;
  // exactly one start mode
  std::optional<IVPState> interior_start;
  std::optional<BoundaryStart> boundary_start;
  std::optional<CriticalStart> critical_start;
  /** Which initial component varies: "u0", "du0", "f0", "df0" for interior
   *  starts; "s" for boundary starts; "P" for critical starts. */
  std::string free_parameter;
  double bracket_lo = 0, bracket_hi = 0;
  double t_end = 0;  ///< span end toward the target
  /** Target specification: either an event-kind (+ optional expected time
   *  t_target, making the mismatch t_event - t_target), or an anchor value
   *  (mismatch component(t_anchor) - value, linearly extended when the run
   *  stops early). */
  std::optional<EndpointKind> target;
  std::optional<double> t_target;
  std::optional<Anchor> anchor;
  double tol = 1e-8;
  int max_iter = 60;
  IntegrateOptions options;
};

struct ShootResult {
  double parameter = 0;  ///< recovered free constant
  double mismatch = 0;   ///< mismatch at the recovered parameter
  int iterations = 0;
  Solution solution;     ///< trajectory at the recovered parameter
};

/** Scalar root solve (Brent bisection/secant hybrid) of the shooting
 *  mismatch over [bracket_lo, bracket_hi].  Throws BracketError when the
 *  bracket does not straddle a sign change and MaxIterations (carrying the
 *  best candidate) when max_iter is exhausted. */
ShootResult shoot(const ShootingProblem& problem);

/* ------------------------------------------------------------------ */
/*  Bidirectional maximal extension                                    */
/* ------------------------------------------------------------------ */

struct Exploration {
  EndpointClass left, right;
  Solution backward, forward;
  /** Radial-geodesic completeness bucket:
   *    case 1  complete in both directions,
   *    case 2  terminates on the boundary in exactly one direction,
   *    case 3  terminates on the boundary in both directions,
   *    case 4  closes across a critical point (geodesics pass the pole). */
  std::string completeness_case;
};

/** Integrates from an interior state in both directions (default spans are
 *  unbounded) and assembles the endpoint pair. */
Exploration explore(const IVPState& interior, const SpaceParams& params,
                    const IntegrateOptions& options = {},
                    double t_left = -std::numeric_limits<double>::infinity(),
                    double t_right = std::numeric_limits<double>::infinity());

}  // namespace warpein
