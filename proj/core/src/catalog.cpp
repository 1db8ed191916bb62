/** \file catalog.cpp
 *  \brief Closed-form solution families and the sign table.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "warpein/errors.hpp"
#include "warpein/geometry.hpp"

namespace warpein {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double take(const std::map<std::string, double>& constants,
            const std::string& key, double fallback) {
  auto it = constants.find(key);
  return it == constants.end() ? fallback : it->second;
}

void reject_unknown_keys(const std::map<std::string, double>& constants,
                         std::initializer_list<const char*> known,
                         const std::string& family) {
  for (const auto& [key, value] : constants) {
    (void)value;
    bool ok = false;
    for (const char* name : known)
      if (key == name) ok = true;
    if (!ok)
      throw ConstraintViolation("unknown constant '" + key + "' for family " +
                                family);
  }
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"hyperbolic-ball", "exp-einstein", "hyperbolic-boundary", "flat-ray",
          "round-sphere"};
}

std::vector<CatalogCell> catalog_table() {
  // rows lambda = -1, 0, +1; columns mu = -1, 0, +1
  return {
      {-1, -1, "hyperbolic-ball"},
      {-1, 0, "exp-einstein"},
      {-1, +1, "hyperbolic-boundary"},
      {0, -1, ""},
      {0, 0, ""},
      {0, +1, "flat-ray"},
      {+1, -1, ""},
      {+1, 0, ""},
      {+1, +1, "round-sphere"},
  };
}

std::string family_for_cell(int lambda_sign, int mu_sign) {
  for (const CatalogCell& cell : catalog_table()) {
    if (cell.lambda_sign == lambda_sign && cell.mu_sign == mu_sign) {
      if (cell.family_name.empty()) {
        std::ostringstream msg;
        msg << "the lambda " << (lambda_sign < 0 ? "< 0" : lambda_sign > 0 ? "> 0" : "= 0")
            << ", mu " << (mu_sign < 0 ? "< 0" : mu_sign > 0 ? "> 0" : "= 0")
            << " cell admits no family";
        throw ConstraintViolation(msg.str());
      }
      return cell.family_name;
    }
  }
  throw ConstraintViolation("sign arguments must each be -1, 0 or +1");
}

ClosedFormFamily instantiate(const std::string& name, int n, int m,
                             const std::map<std::string, double>& constants) {
  ClosedFormFamily fam;
  fam.name = name;
  fam.params.n = n;
  fam.params.m = m;
  const double nm1 = n + m - 1;

  if (name == "hyperbolic-boundary") {
    fam.id = FamilyId::hyperbolic_boundary;
    reject_unknown_keys(constants, {"kbar", "k", "C"}, name);
    fam.kbar = take(constants, "kbar", -1.0);
    fam.params.k = take(constants, "k", -1.0);
    fam.C = take(constants, "C", 1.0);
    if (!(fam.kbar < 0))
      throw ConstraintViolation(
          "hyperbolic-boundary requires kbar < 0 (the lambda < 0, mu > 0 cell)");
    if (!(fam.params.k < 0))
      throw ConstraintViolation(
          "hyperbolic-boundary requires a negatively curved fiber, k < 0");
    if (!(fam.C > 0)) throw ConstraintViolation("amplitude C must be positive");
    fam.params.lambda = nm1 * fam.kbar;
    fam.mu_expected = (m - 1) * (-fam.kbar) * fam.C * fam.C;
    fam.lambda_sign = -1;
    fam.mu_sign = +1;
    fam.printed_form =
        "u^2 = sqrt(-kbar) cosh^2(sqrt(-kbar) t)   [dimensionally odd prefactor]";
    fam.resolved_form =
        "u(t) = sqrt(k/kbar) cosh(sqrt(-kbar) t),  f(t) = C sinh(sqrt(-kbar) t)";
    fam.t_min = 0;
    fam.t_max = kInf;
    fam.open_left = false;
    fam.unbounded_right = true;
    fam.left_kind = EndpointKind::boundary;
    fam.right_kind = EndpointKind::infinite;
  } else if (name == "exp-einstein") {
    fam.id = FamilyId::exp_einstein;
    reject_unknown_keys(constants, {"kbar", "a", "C"}, name);
    fam.kbar = take(constants, "kbar", -1.0);
    fam.C = take(constants, "C", take(constants, "a", 1.0));
    if (!(fam.kbar < 0))
      throw ConstraintViolation("exp-einstein requires kbar < 0");
    if (!(fam.C > 0)) throw ConstraintViolation("amplitude a must be positive");
    fam.params.k = 0.0;
    fam.params.lambda = nm1 * fam.kbar;
    fam.mu_expected = 0.0;
    fam.lambda_sign = -1;
    fam.mu_sign = 0;
    fam.printed_form = "u^2 = e^{2 sqrt(-kbar) t}";
    fam.resolved_form =
        "u(t) = e^{sqrt(-kbar) t},  f(t) = a e^{sqrt(-kbar) t}";
    fam.t_min = -kInf;
    fam.t_max = kInf;
    fam.unbounded_left = fam.unbounded_right = true;
    fam.left_kind = EndpointKind::infinite;
    fam.right_kind = EndpointKind::infinite;
  } else if (name == "hyperbolic-ball") {
    fam.id = FamilyId::hyperbolic_ball;
    reject_unknown_keys(constants, {"kbar", "C"}, name);
    fam.kbar = take(constants, "kbar", -1.0);
    fam.C = take(constants, "C", 1.0);
    if (!(fam.kbar < 0))
      throw ConstraintViolation("hyperbolic-ball requires kbar < 0");
    if (!(fam.C > 0)) throw ConstraintViolation("amplitude C must be positive");
    fam.params.k = 1.0;  // round fiber: u'(0)^2 = k = 1
    fam.params.lambda = nm1 * fam.kbar;
    fam.mu_expected = (m - 1) * fam.kbar * fam.C * fam.C;
    fam.lambda_sign = -1;
    fam.mu_sign = -1;
    fam.printed_form =
        "u^2 = sqrt(-kbar) sinh^2(sqrt(-kbar) t)   [dimensionally odd prefactor]";
    fam.resolved_form =
        "u(t) = sinh(sqrt(-kbar) t)/sqrt(-kbar),  f(t) = C cosh(sqrt(-kbar) t)";
    fam.t_min = 0;
    fam.t_max = kInf;
    fam.open_left = true;  // u(0) = 0 is a (critical) degenerate endpoint
    fam.unbounded_right = true;
    fam.left_kind = EndpointKind::critical_min;
    fam.right_kind = EndpointKind::infinite;
  } else if (name == "flat-ray") {
    fam.id = FamilyId::flat_ray;
    reject_unknown_keys(constants, {"C"}, name);
    fam.kbar = 0.0;
    fam.C = take(constants, "C", 1.0);
    if (!(fam.C > 0)) throw ConstraintViolation("amplitude C must be positive");
    fam.params.k = 0.0;
    fam.params.lambda = 0.0;
    fam.mu_expected = (m - 1) * fam.C * fam.C;
    fam.lambda_sign = 0;
    fam.mu_sign = +1;
    fam.printed_form = "u^2 = 1   (product metric dt^2 + g_F)";
    fam.resolved_form = "u(t) = 1,  f(t) = C t";
    fam.t_min = 0;
    fam.t_max = kInf;
    fam.unbounded_right = true;
    fam.left_kind = EndpointKind::boundary;
    fam.right_kind = EndpointKind::infinite;
  } else if (name == "round-sphere") {
    fam.id = FamilyId::round_sphere;
    reject_unknown_keys(constants, {"kbar", "C"}, name);
    fam.kbar = take(constants, "kbar", 1.0);
    fam.C = take(constants, "C", 1.0);
    if (!(fam.kbar > 0))
      throw ConstraintViolation("round-sphere requires kbar > 0");
    if (!(fam.C > 0)) throw ConstraintViolation("amplitude C must be positive");
    fam.params.k = 1.0;
    fam.params.lambda = nm1 * fam.kbar;
    fam.mu_expected = (m - 1) * fam.kbar * fam.C * fam.C;
    fam.lambda_sign = +1;
    fam.mu_sign = +1;
    fam.printed_form =
        "u^2 = sqrt(kbar) sin^2(sqrt(kbar) t)   [dimensionally odd prefactor]";
    fam.resolved_form =
        "u(t) = sin(sqrt(kbar) t)/sqrt(kbar),  f(t) = C cos(sqrt(kbar) t)";
    const double r = std::sqrt(fam.kbar);
    fam.t_min = 0;
    fam.t_max = 0.5 * std::numbers::pi / r;  // potential vanishes at the equator
    fam.open_left = true;                    // u(0) = 0 pole
    fam.left_kind = EndpointKind::critical_max;
    fam.right_kind = EndpointKind::boundary;
  } else {
    // distinguish empty-cell requests from typos where possible
    throw UnknownFamily(
        "unknown catalog family '" + name +
        "'; known: hyperbolic-ball, exp-einstein, hyperbolic-boundary, "
        "flat-ray, round-sphere (the remaining sign combinations — e.g. "
        "lambda > 0 with mu = 0 — admit no family)");
  }

  fam.params.validate();
  return fam;
}

bool ClosedFormFamily::in_domain(double t) const {
  if (t < t_min || t > t_max) return false;
  if (open_left && t == t_min) return false;
  if (open_right && t == t_max) return false;
  return true;
}

PointState ClosedFormFamily::eval(double t) const {
  if (!(t >= t_min && t <= t_max)) {
    std::ostringstream msg;
    msg << "t = " << t << " is outside the domain [" << t_min << ", " << t_max
        << "] of family " << name;
    throw GridError(msg.str());
  }
  PointState st;
  st.t = t;
  const double r = std::sqrt(std::abs(kbar));
  switch (id) {
    case FamilyId::hyperbolic_boundary: {
      const double A = std::sqrt(params.k / kbar);  // k < 0, kbar < 0
      st.u = A * std::cosh(r * t);
      st.du = A * r * std::sinh(r * t);
      st.ddu = A * r * r * std::cosh(r * t);
      st.dddu = A * r * r * r * std::sinh(r * t);
      st.f = C * std::sinh(r * t);
      st.df = C * r * std::cosh(r * t);
      st.ddf = C * r * r * std::sinh(r * t);
      break;
    }
    case FamilyId::exp_einstein: {
      const double e = std::exp(r * t);
      st.u = e;
      st.du = r * e;
      st.ddu = r * r * e;
      st.dddu = r * r * r * e;
      st.f = C * e;
      st.df = C * r * e;
      st.ddf = C * r * r * e;
      break;
    }
    case FamilyId::hyperbolic_ball: {
      st.u = std::sinh(r * t) / r;
      st.du = std::cosh(r * t);
      st.ddu = r * std::sinh(r * t);
      st.dddu = r * r * std::cosh(r * t);
      st.f = C * std::cosh(r * t);
      st.df = C * r * std::sinh(r * t);
      st.ddf = C * r * r * std::cosh(r * t);
      break;
    }
    case FamilyId::flat_ray: {
      st.u = 1.0;
      st.du = st.ddu = st.dddu = 0.0;
      st.f = C * t;
      st.df = C;
      st.ddf = 0.0;
      break;
    }
    case FamilyId::round_sphere: {
      st.u = std::sin(r * t) / r;
      st.du = std::cos(r * t);
      st.ddu = -r * std::sin(r * t);
      st.dddu = -r * r * std::cos(r * t);
      st.f = C * std::cos(r * t);
      st.df = -C * r * std::sin(r * t);
      st.ddf = -C * r * r * std::cos(r * t);
      break;
    }
  }
  return st;
}

Profile sample(const ClosedFormFamily& family, const std::vector<double>& grid) {
  if (grid.empty())
    throw GridError("sample: empty grid is outside every family domain");
  Profile profile;
  profile.params = family.params;
  profile.ts.reserve(grid.size());
  profile.states.reserve(grid.size());
  for (double t : grid) {
    if (!family.in_domain(t)) {
      std::ostringstream msg;
      msg << "sample: t = " << t << " is outside the domain of family "
          << family.name;
      throw GridError(msg.str());
    }
    profile.ts.push_back(t);
    profile.states.push_back(family.eval(t));
  }
  profile.validate_structure();
  EndpointClass left;
  left.kind = family.left_kind;
  left.t_end = family.t_min;
  left.unbounded = family.unbounded_left;
  left.note = "expected endpoint of the closed-form family";
  EndpointClass right;
  right.kind = family.right_kind;
  right.t_end = family.t_max;
  right.unbounded = family.unbounded_right;
  right.note = "expected endpoint of the closed-form family";
  profile.left_end = left;
  profile.right_end = right;
  return profile;
}

double requested_mu(const ClosedFormFamily& family, double t) {
  return mu_invariant(family.eval(t), family.params);
}

}  // namespace warpein
