/** \file residuals.cpp
 *  \brief Residual evaluation, verification reports, f reconstruction.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "warpein/errors.hpp"
#include "warpein/geometry.hpp"

namespace warpein {

ABCCoefficients coeff_abc(const PointState& state, const SpaceParams& params) {
  if (state.u == 0.0)
    throw SingularState("coeff_abc: u = 0 is a degenerate (endpoint-only) state");
  const double n1 = params.n - 1, n2 = params.n - 2;
  ABCCoefficients out;
  out.a = (n1 / params.m) * (state.ddu / state.u) + params.lambda / params.m;
  out.b = params.m * state.du / state.u;
  out.c = params.lambda - (n2 * params.k - n2 * state.du * state.du -
                           state.u * state.ddu) /
                              (state.u * state.u);
  return out;
}

double residual_first(const PointState& state, const SpaceParams& params) {
  const ABCCoefficients abc = coeff_abc(state, params);
  return state.ddf + abc.a * state.f;
}

double residual_second(const PointState& state, const SpaceParams& params) {
  const ABCCoefficients abc = coeff_abc(state, params);
  return state.df * abc.b + state.f * abc.c;
}

namespace detail {

template <class T>
T compat_poly(T u, T du, T ddu, T dddu, T lambda, T k, int n, int m) {
  const T n2 = T(n - 2);
  const T u2 = u * u, du2 = du * du;
  return lambda * lambda * u2 * u2                      // lambda^2 u^4
         - T(2) * n2 * k * lambda * u2                  // -2(n-2) k lambda u^2
         + T(2) * n2 * lambda * u2 * du2                // +2(n-2) lambda u^2 u'^2
         + (T(2) + T(m)) * lambda * u2 * u * ddu        // +(2+m) lambda u^3 u''
         + n2 * n2 * k * k                              // +(n-2)^2 k^2
         - (T(2) * n2 + T(m)) * n2 * k * du2            // -(2(n-2)+m)(n-2) k u'^2
         - (T(2) + T(m)) * n2 * k * u * ddu             // -(2+m)(n-2) k u u''
         + n2 * (T(m) + n2) * du2 * du2                 // +(n-2)(m+n-2) u'^4
         + (T(2) * n2 + T(m)) * u * du2 * ddu           // +(2(n-2)+m) u u'^2 u''
         + (T(1) + T(m)) * u2 * ddu * ddu               // +(1+m) u^2 u''^2
         - T(m) * u2 * du * dddu;                       // -m u^2 u' u'''
}

template <class T>
T compat_printed(T u, T du, T ddu, T dddu, T lambda, T k, int n, int m) {
  // differs from compat_poly by + m lambda u^2 u'^2
  return compat_poly<T>(u, du, ddu, dddu, lambda, k, n, m) +
         T(m) * lambda * u * u * du * du;
}

template <class T>
T compat_quotient(T u, T du, T ddu, T dddu, T lambda, T k, int n, int m) {
  // Cleared numerator of -a + (c/b)' - (c/b)^2 with b = m u'/u, c = N/u^2:
  //   m^2 u^2 u'^2 a - m u u' N' + m N (u'^2 + u u'') + N^2
  const T n1 = T(n - 1), n2 = T(n - 2), mm = T(m);
  const T a = (n1 / mm) * (ddu / u) + lambda / mm;
  const T N = lambda * u * u - n2 * k + n2 * du * du + u * ddu;
  const T Np = T(2) * lambda * u * du + (T(2) * T(n) - T(3)) * du * ddu + u * dddu;
  return a * mm * mm * u * u * du * du - mm * u * du * Np +
         mm * N * (du * du + u * ddu) + N * N;
}

template double compat_poly<double>(double, double, double, double, double, double, int, int);
template double compat_quotient<double>(double, double, double, double, double, double, int, int);
template double compat_printed<double>(double, double, double, double, double, double, int, int);
template long double compat_poly<long double>(long double, long double, long double, long double, long double, long double, int, int);
template long double compat_quotient<long double>(long double, long double, long double, long double, long double, long double, int, int);
template long double compat_printed<long double>(long double, long double, long double, long double, long double, long double, int, int);

}  // namespace detail

double residual_compat(const PointState& state, const SpaceParams& params) {
  return detail::compat_poly<double>(state.u, state.du, state.ddu, state.dddu,
                                     params.lambda, params.k, params.n, params.m);
}

double residual_compat_printed(const PointState& state, const SpaceParams& params) {
  return detail::compat_printed<double>(state.u, state.du, state.ddu, state.dddu,
                                        params.lambda, params.k, params.n,
                                        params.m);
}

double residual_compat_quotient(const PointState& state, const SpaceParams& params) {
  if (state.u == 0.0)
    throw SingularState("residual_compat_quotient: u = 0");
  return detail::compat_quotient<double>(state.u, state.du, state.ddu,
                                         state.dddu, params.lambda, params.k,
                                         params.n, params.m);
}

double residual_boundary(const PointState& state, double f_tol) {
  if (std::abs(state.f) > f_tol) {
    std::ostringstream msg;
    msg << "residual_boundary: |f| = " << std::abs(state.f) << " exceeds "
        << f_tol << "; not a boundary state (f must vanish on the boundary)";
    throw InputError(msg.str());
  }
  return std::abs(state.ddf) + std::abs(state.du);
}

double residual_normalization(const PointState& state, const SpaceParams& params) {
  return std::max({1.0, std::abs(params.lambda) * state.u * state.u,
                   std::abs(state.ddf)});
}

ResidualReport verify(const Profile& profile, double tol) {
  if (profile.ts.empty()) throw GridError("verify: empty profile grid");
  if (tol <= 0) throw ConstraintViolation("verify: tolerance must be positive");
  profile.validate_structure();
  profile.params.validate();

  ResidualReport report;
  report.grid_size = profile.size();
  report.tolerance = tol;
  report.filled_columns = profile.filled_columns;

  double mu_sum = 0;
  bool first_node = true;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const PointState& st = profile.states[i];
    if (!(st.u > 0.0)) {
      std::ostringstream msg;
      msg << "verify: u <= 0 at node " << i << " (t = " << st.t
          << "); the warping function must be positive at interior nodes";
      throw MalformedProfile(msg.str());
    }
    const double r2 = residual_second(st, profile.params);
    const double rc = residual_compat(st, profile.params);
    const double r1 = residual_first(st, profile.params);
    const double norm = residual_normalization(st, profile.params);
    report.raw_r_second = std::max(report.raw_r_second, std::abs(r2));
    report.raw_r_compat = std::max(report.raw_r_compat, std::abs(rc));
    report.raw_r_first = std::max(report.raw_r_first, std::abs(r1));
    report.r_second = std::max(report.r_second, std::abs(r2) / norm);
    report.r_compat = std::max(report.r_compat, std::abs(rc) / norm);
    report.r_first = std::max(report.r_first, std::abs(r1) / norm);

    const double mu = mu_invariant(st, profile.params);
    if (first_node) {
      report.mu_min = report.mu_max = mu;
      first_node = false;
    } else {
      report.mu_min = std::min(report.mu_min, mu);
      report.mu_max = std::max(report.mu_max, mu);
    }
    mu_sum += mu;

    const EigenData eig = eigen_data(st, profile.params);
    report.mu_route_gap = std::max(report.mu_route_gap, eig.route_gap);

    const bool interior = (i > 0 && i + 1 < profile.size());
    if (interior && !(st.f > 0.0)) report.f_positive_interior = false;
  }
  report.mu_mean = mu_sum / static_cast<double>(profile.size());
  report.mu_spread = report.mu_max - report.mu_min;

  // boundary residual at endpoint nodes with f ~ 0
  for (std::size_t i : {std::size_t{0}, profile.size() - 1}) {
    const PointState& st = profile.states[i];
    const double f_window = 100.0 * tol * std::max(1.0, std::abs(st.df));
    if (std::abs(st.f) <= f_window) {
      const double rb = residual_boundary(st, f_window);
      report.r_boundary = std::max(report.r_boundary.value_or(0.0), rb);
    }
    if (profile.size() == 1) break;
  }

  report.verdict = report.r_second <= tol && report.r_compat <= tol &&
                   report.r_first <= tol &&
                   (!report.r_boundary || *report.r_boundary <= tol);
  return report;
}

Profile f_from_u(const Profile& u_profile, double f0) {
  u_profile.validate_structure();
  u_profile.params.validate();
  if (u_profile.size() < 2)
    throw GridError("f_from_u: need at least two grid nodes");
  if (!(f0 > 0)) throw ConstraintViolation("f_from_u: f0 must be positive");

  const SpaceParams& p = u_profile.params;
  const std::size_t nn = u_profile.size();
  std::vector<double> g(nn), gp(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    const PointState& st = u_profile.states[i];
    if (!(st.u > 0)) throw MalformedProfile("f_from_u: u <= 0 at a node");
    const double scale = std::max(std::abs(st.ddu), 1.0);
    if (std::abs(st.du) <= 1e-12 * scale) {
      std::ostringstream msg;
      msg << "f_from_u: u' vanishes at t = " << st.t
          << "; the quadrature formula f = f0 exp(-Int c/b) is singular there";
      throw SingularQuadrature(msg.str());
    }
    const double n2 = p.n - 2;
    // g = c/b = N / (m u u') with N = lambda u^2 - (n-2)k + (n-2)u'^2 + u u''
    const double N = p.lambda * st.u * st.u - n2 * p.k + n2 * st.du * st.du +
                     st.u * st.ddu;
    const double Np = 2 * p.lambda * st.u * st.du +
                      (2.0 * p.n - 3.0) * st.du * st.ddu + st.u * st.dddu;
    g[i] = N / (p.m * st.u * st.du);
    gp[i] = (Np * st.u * st.du - N * (st.du * st.du + st.u * st.ddu)) /
            (p.m * st.u * st.u * st.du * st.du);
  }

  Profile out = u_profile;
  out.filled_columns.push_back("f");
  out.filled_columns.push_back("df");
  out.filled_columns.push_back("ddf");

  double integral = 0.0;
  for (std::size_t i = 0; i < nn; ++i) {
    if (i > 0) {
      const double h = u_profile.ts[i] - u_profile.ts[i - 1];
      const double trap = 0.5 * h * (g[i - 1] + g[i]);
      const double corr = h * h / 12.0 * (gp[i - 1] - gp[i]);
      // cubic-Hermite panel; trapezoid fallback when derivative data is bad
      integral += std::isfinite(corr) ? trap + corr : trap;
    }
    PointState& st = out.states[i];
    st.f = f0 * std::exp(-integral);
    st.df = -g[i] * st.f;
    const ABCCoefficients abc = coeff_abc(st, p);
    st.ddf = -abc.a * st.f;
  }
  out.left_end.reset();
  out.right_end.reset();
  return out;
}

}  // namespace warpein
