/** \file warpein_cli.cpp
 *  \brief Command-line front end: verify profiles, solve initial-value and
 *         shooting problems, emit catalog families, classify endpoints.
 *
 *  Exit status: 0 verdict pass / successful run, 1 verdict fail,
 *  2 usage or configuration error, 3 numerical failure.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "warpein/warpein.hpp"

namespace {

using namespace warpein;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string format = "flat";          // "flat" or "json"
  std::string report_path;              // empty: stdout
};

/** Writes the report to the chosen sink unless suppressed. */
void emit_report(const Common& common, const ReportDoc& doc, bool suppress_stdout) {
  const std::string text =
      (common.format == "json") ? doc.to_json() : doc.to_flat();
  if (!common.report_path.empty()) {
    std::ofstream out(common.report_path);
    if (!out)
      throw InputError("cannot open report path '" + common.report_path + "'");
    out << text;
  } else if (!suppress_stdout) {
    std::cout << text;
  }
}

SpaceParams make_params(int n, int m, double lambda, double k) {
  SpaceParams p;
  p.n = n;
  p.m = m;
  p.lambda = lambda;
  p.k = k;
  p.validate();
  return p;
}

void put_solution_summary(ReportDoc& doc, const Solution& sol) {
  ReportDoc run = doc.section("run");
  run.put("stop_reason", sol.stop_reason);
  run.put("reached_span_end", sol.reached_span_end);
  run.put("steps_accepted", sol.steps_accepted);
  run.put("steps_rejected", sol.steps_rejected);
  run.put("rhs_evaluations", sol.rhs_evaluations);
  run.put("t_final", sol.last.t);
  ReportDoc evs = doc.section("events");
  evs.put("count", sol.events.size());
  int i = 0;
  for (const Event& ev : sol.events) {
    ReportDoc e = evs.section("event_" + std::to_string(i++));
    e.put("type", to_string(ev.type));
    e.put("t", ev.t);
    e.put("stopped", ev.stopped);
    if (!ev.note.empty()) e.put("note", ev.note);
  }
  ReportDoc end = doc.section("endpoint");
  put_endpoint(end, sol.endpoint);
}

/* ------------------------------------------------------------------ */
/*  verify                                                              */
/* ------------------------------------------------------------------ */

struct VerifyArgs {
  std::string input;
  int n = 3, m = 2;
  double lambda = 0, k = 0, tol = 1e-9;
};

int run_verify(const VerifyArgs& args, const Common& common) {
  Profile profile = read_profile_csv(args.input);
  profile.params = make_params(args.n, args.m, args.lambda, args.k);
  const ResidualReport rep = verify(profile, args.tol);

  ReportDoc doc;
  doc.put("command", "verify");
  doc.put("input", args.input);
  put_params(doc, profile.params);
  put_residual_report(doc, rep);
  if (!rep.filled_columns.empty()) {
    std::string joined;
    for (const std::string& c : rep.filled_columns)
      joined += (joined.empty() ? "" : ",") + c;
    doc.put("filled_columns", joined);
  }
  emit_report(common, doc, false);
  return rep.verdict ? kExitPass : kExitFail;
}

/* ------------------------------------------------------------------ */
/*  solve                                                               */
/* ------------------------------------------------------------------ */

struct SolveArgs {
  int n = 3, m = 2;
  double lambda = 0, k = 0;
  double u0 = 1, du0 = 0, f0 = 0, df0 = 0, dddu0 = 0;
  std::vector<double> t_span;
  double ode_tol = 1e-10;
  int nodes = 0;
  std::vector<double> grid_spec;  // a,b,N
  std::string output;
  bool allow_f_crossing = false;
  bool stop_on_df_zero = false;
  bool stop_on_du_zero = false;
  double t_cap = 1e4;
};

int run_solve(const SolveArgs& args, const Common& common) {
  const SpaceParams params = make_params(args.n, args.m, args.lambda, args.k);
  if (args.t_span.size() != 2)
    throw ConstraintViolation("solve: --t-span needs exactly two values a,b");
  const double t0 = args.t_span[0], t1 = args.t_span[1];
  if (t0 == t1) throw ConstraintViolation("solve: empty time span");
  const int dir = (t1 > t0) ? 1 : -1;

  IntegrateOptions opts;
  opts.ode_tol = args.ode_tol;
  opts.stop_on_f_zero = !args.allow_f_crossing;
  opts.stop_on_df_zero = args.stop_on_df_zero;
  opts.stop_on_du_zero = args.stop_on_du_zero;
  opts.t_cap = args.t_cap;
  if (args.nodes > 0) opts.grid_nodes = args.nodes;
  if (!args.grid_spec.empty()) {
    if (args.grid_spec.size() != 3 || args.grid_spec[2] < 2 ||
        args.grid_spec[2] != std::floor(args.grid_spec[2]))
      throw GridError("solve: --grid needs a,b,N with integer N >= 2");
    const auto N = static_cast<std::size_t>(args.grid_spec[2]);
    opts.grid.resize(N);
    for (std::size_t i = 0; i < N; ++i)
      opts.grid[i] = args.grid_spec[0] + (args.grid_spec[1] - args.grid_spec[0]) *
                                             static_cast<double>(i) /
                                             static_cast<double>(N - 1);
    // pin the endpoints: the affine formula can overshoot by one ulp
    opts.grid.front() = args.grid_spec[0];
    opts.grid.back() = args.grid_spec[1];
  }

  IVPState init;
  std::string start_mode = "interior";
  if (args.f0 == 0.0) {
    if (args.du0 != 0.0)
      throw InvalidInitialState(
          "solve: f(t0) = 0 with u'(t0) != 0 violates the boundary structure "
          "— where the potential vanishes, a regular structure forces "
          "u' = 0 and f'' = 0; give u'(t0) = 0 (boundary start) or f(t0) != 0");
    const BoundarySeries series =
        boundary_series(t0, args.u0, args.df0, params);
    init = series.eval_ivp(dir * opts.singular_delta);
    start_mode = "boundary-series";
  } else if (args.u0 == 0.0) {
    const CriticalSeries series =
        critical_series(t0, args.du0, args.f0, args.dddu0, params);
    init = series.eval_ivp(dir * opts.singular_delta);
    start_mode = "critical-series";
  } else {
    init = {t0, args.u0, args.du0, args.f0, args.df0};
  }

  const Solution sol = integrate(init, params, init.t, t1, opts);

  const bool profile_to_stdout = args.output.empty();
  if (profile_to_stdout)
    write_profile_csv(sol.profile, std::cout);
  else
    write_profile_csv(sol.profile, args.output);

  ReportDoc doc;
  doc.put("command", "solve");
  put_params(doc, params);
  {
    ReportDoc ini = doc.section("initial");
    ini.put("mode", start_mode);
    ini.put("t0", t0);
    ini.put("u0", args.u0);
    ini.put("du0", args.du0);
    ini.put("f0", args.f0);
    ini.put("df0", args.df0);
    ini.put("t1", t1);
    ini.put("ode_tol", args.ode_tol);
  }
  put_solution_summary(doc, sol);
  if (!args.output.empty()) doc.put("profile", args.output);
  emit_report(common, doc, profile_to_stdout && common.report_path.empty());
  return kExitPass;
}

/* ------------------------------------------------------------------ */
/*  shoot                                                               */
/* ------------------------------------------------------------------ */

struct ShootArgs {
  int n = 3, m = 2;
  double lambda = 0, k = 0;
  std::string target;  // boundary | critical-min | critical-max
  std::string free_param;
  std::vector<double> bracket;
  std::vector<double> start_interior;  // t0,u0,du0,f0,df0
  std::vector<double> start_boundary;  // t0,u0,s
  std::vector<double> start_critical;  // t0,w,F,P
  double t_end = 0;
  std::optional<double> t_target;
  std::vector<double> anchor_spec;  // t,value  (+ --anchor-component)
  std::string anchor_component = "f";
  double tol = 1e-8;
  int max_iter = 60;
  double ode_tol = 1e-10;
};

int run_shoot(const ShootArgs& args, const Common& common) {
  ShootingProblem pr;
  pr.params = make_params(args.n, args.m, args.lambda, args.k);
  pr.free_parameter = args.free_param;
  if (args.bracket.size() != 2)
    throw ConstraintViolation("shoot: --bracket needs exactly two values a,b");
  pr.bracket_lo = args.bracket[0];
  pr.bracket_hi = args.bracket[1];
  pr.t_end = args.t_end;
  pr.tol = args.tol;
  pr.max_iter = args.max_iter;
  pr.options.ode_tol = args.ode_tol;

  const int starts = (!args.start_interior.empty() ? 1 : 0) +
                     (!args.start_boundary.empty() ? 1 : 0) +
                     (!args.start_critical.empty() ? 1 : 0);
  if (starts != 1)
    throw ConstraintViolation(
        "shoot: give exactly one of --start (t0,u0,du0,f0,df0), "
        "--start-boundary (t0,u0,s) or --start-critical (t0,w,F,P)");
  if (!args.start_interior.empty()) {
    if (args.start_interior.size() != 5)
      throw ConstraintViolation("shoot: --start needs t0,u0,du0,f0,df0");
    pr.interior_start = IVPState{args.start_interior[0], args.start_interior[1],
                                 args.start_interior[2], args.start_interior[3],
                                 args.start_interior[4]};
  } else if (!args.start_boundary.empty()) {
    if (args.start_boundary.size() != 3)
      throw ConstraintViolation("shoot: --start-boundary needs t0,u0,s");
    pr.boundary_start = BoundaryStart{args.start_boundary[0],
                                      args.start_boundary[1],
                                      args.start_boundary[2]};
  } else {
    if (args.start_critical.size() != 4)
      throw ConstraintViolation("shoot: --start-critical needs t0,w,F,P");
    pr.critical_start =
        CriticalStart{args.start_critical[0], args.start_critical[1],
                      args.start_critical[2], args.start_critical[3]};
  }

  if (!args.target.empty()) {
    if (args.target == "boundary")
      pr.target = EndpointKind::boundary;
    else if (args.target == "critical-min")
      pr.target = EndpointKind::critical_min;
    else if (args.target == "critical-max")
      pr.target = EndpointKind::critical_max;
    else
      throw ConstraintViolation("shoot: unknown --target '" + args.target +
                                "' (expected boundary, critical-min or "
                                "critical-max)");
    pr.t_target = args.t_target;
    // a critical target keeps integrating to the pole; a boundary target
    // must be allowed to reach f = 0 (stop there, which is the default)
    if (pr.target != EndpointKind::boundary) pr.options.stop_on_f_zero = true;
  }
  if (!args.anchor_spec.empty()) {
    if (args.anchor_spec.size() != 2)
      throw ConstraintViolation("shoot: --anchor needs t,value (set the "
                                "component with --anchor-component)");
    Anchor an;
    an.t = args.anchor_spec[0];
    an.value = args.anchor_spec[1];
    an.component = args.anchor_component;
    pr.anchor = an;
  }

  const ShootResult res = shoot(pr);

  ReportDoc doc;
  doc.put("command", "shoot");
  put_params(doc, pr.params);
  {
    ReportDoc prb = doc.section("problem");
    prb.put("free", pr.free_parameter);
    prb.put("bracket_lo", pr.bracket_lo);
    prb.put("bracket_hi", pr.bracket_hi);
    if (!args.target.empty()) prb.put("target", args.target);
    if (pr.t_target) prb.put("t_target", *pr.t_target);
    if (pr.anchor) {
      prb.put("anchor_t", pr.anchor->t);
      prb.put("anchor_component", pr.anchor->component);
      prb.put("anchor_value", pr.anchor->value);
    }
    prb.put("t_end", pr.t_end);
    prb.put("tol", pr.tol);
    prb.put("max_iter", pr.max_iter);
  }
  {
    ReportDoc r = doc.section("result");
    r.put("parameter", res.parameter);
    r.put("mismatch", res.mismatch);
    r.put("iterations", res.iterations);
  }
  put_solution_summary(doc, res.solution);
  emit_report(common, doc, false);
  return kExitPass;
}

/* ------------------------------------------------------------------ */
/*  catalog                                                             */
/* ------------------------------------------------------------------ */

struct CatalogArgs {
  bool list = false;
  std::string emit;
  int n = 3, m = 2;
  std::vector<double> grid_spec;  // a,b,N
  std::vector<std::string> constants;  // key=value
  std::string output;
};

std::string sign_label(int s) { return s < 0 ? "< 0" : (s > 0 ? "> 0" : "= 0"); }

int run_catalog(const CatalogArgs& args, const Common& common) {
  const bool has_emit = !args.emit.empty();
  if (args.list == has_emit)
    throw ConstraintViolation("catalog: use exactly one of --list or --emit");
  if (args.list) {
    const std::vector<CatalogCell> table = catalog_table();
    std::cout << "closed-form families by (lambda, mu) sign\n\n";
    std::cout << "              | mu < 0            | mu = 0            | mu > 0\n";
    std::cout << "  ------------+-------------------+-------------------+--------------------\n";
    for (int ls : {-1, 0, 1}) {
      std::ostringstream row;
      row << "  lambda " << sign_label(ls) << "  ";
      for (int ms : {-1, 0, 1}) {
        std::string name = "None";
        for (const CatalogCell& cell : table)
          if (cell.lambda_sign == ls && cell.mu_sign == ms && !cell.family_name.empty())
            name = cell.family_name;
        row << "| " << name << std::string(name.size() < 18 ? 18 - name.size() : 0, ' ');
      }
      std::cout << row.str() << "\n";
    }
    std::cout << "\nfamilies:\n";
    for (const std::string& name : catalog_names()) {
      const ClosedFormFamily fam = instantiate(name, 4, 3);
      std::cout << "  " << name << ": " << fam.resolved_form << "\n";
    }
    return kExitPass;
  }

  if (args.grid_spec.size() != 3 || args.grid_spec[2] < 2 ||
      args.grid_spec[2] != std::floor(args.grid_spec[2]))
    throw GridError("catalog: --grid needs a,b,N with integer N >= 2");
  std::map<std::string, double> constants;
  for (const std::string& kv : args.constants) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConstraintViolation("catalog: --constant needs key=value, got '" +
                                kv + "'");
    try {
      constants[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConstraintViolation("catalog: bad numeric value in '" + kv + "'");
    }
  }
  const ClosedFormFamily fam = instantiate(args.emit, args.n, args.m, constants);
  const auto N = static_cast<std::size_t>(args.grid_spec[2]);
  std::vector<double> grid(N);
  for (std::size_t i = 0; i < N; ++i)
    grid[i] = args.grid_spec[0] + (args.grid_spec[1] - args.grid_spec[0]) *
                                      static_cast<double>(i) /
                                      static_cast<double>(N - 1);
  // pin the endpoints: the affine formula can overshoot by one ulp
  grid.front() = args.grid_spec[0];
  grid.back() = args.grid_spec[1];
  const Profile profile = sample(fam, grid);

  const bool profile_to_stdout = args.output.empty();
  if (profile_to_stdout)
    write_profile_csv(profile, std::cout);
  else
    write_profile_csv(profile, args.output);

  ReportDoc doc;
  doc.put("command", "catalog");
  doc.put("family", fam.name);
  put_params(doc, fam.params);
  {
    ReportDoc f = doc.section("forms");
    f.put("resolved", fam.resolved_form);
    f.put("printed", fam.printed_form);
  }
  {
    ReportDoc c = doc.section("constants");
    c.put("kbar", fam.kbar);
    c.put("C", fam.C);
    c.put("mu_expected", fam.mu_expected);
  }
  {
    ReportDoc d = doc.section("domain");
    d.put("t_min", fam.t_min);
    d.put("t_max", fam.t_max);
    d.put("left_kind", to_string(fam.left_kind));
    d.put("right_kind", to_string(fam.right_kind));
  }
  if (!args.output.empty()) doc.put("profile", args.output);
  emit_report(common, doc, profile_to_stdout && common.report_path.empty());
  return kExitPass;
}

/* ------------------------------------------------------------------ */
/*  classify                                                            */
/* ------------------------------------------------------------------ */

struct ClassifyArgs {
  std::string input;
  int n = 3, m = 2;
  double lambda = 0, k = 0;
  double tol = 1e-8;
  std::optional<double> oddness_t0;
};

int run_classify(const ClassifyArgs& args, const Common& common) {
  Profile profile = read_profile_csv(args.input);
  profile.params = make_params(args.n, args.m, args.lambda, args.k);

  ReportDoc doc;
  doc.put("command", "classify");
  doc.put("input", args.input);
  put_params(doc, profile.params);

  const PointState& first = profile.states.front();
  const PointState& last = profile.states.back();
  for (const auto& [label, st] : {std::pair<const char*, const PointState&>(
                                      "left", first),
                                  {"right", last}}) {
    ClassifyInputs ci;
    ci.state = st;
    ci.tol = args.tol;
    ReportDoc end = doc.section(label);
    put_endpoint(end, classify_endpoint(ci, profile.params));
  }
  if (args.oddness_t0) {
    const OddnessReport odd = oddness_check(profile, *args.oddness_t0);
    put_oddness(doc, odd);
  }
  emit_report(common, doc, false);
  return kExitPass;
}

}  // namespace

/* ------------------------------------------------------------------ */
/*  main                                                                */
/* ------------------------------------------------------------------ */

int main(int argc, char** argv) {
  CLI::App app{"warpein — verify, solve and classify one-dimensional-base "
               "warped-product Einstein structures"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "declarative config file (flags win)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Common common;
  app.add_option("--format", common.format, "report format: flat or json")
      ->check(CLI::IsMember({"flat", "json"}))
      ->capture_default_str();
  app.add_option("--report", common.report_path,
                 "write the report to this path instead of stdout");

  VerifyArgs v;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check residuals of a profile");
  verify_cmd->add_option("--input", v.input, "profile CSV")->required();
  verify_cmd->add_option("--n", v.n, "fiber dimension n >= 2")->required();
  verify_cmd->add_option("--m", v.m, "weight dimension m >= 2")->required();
  verify_cmd->add_option("--lambda", v.lambda, "Einstein constant")->required();
  verify_cmd->add_option("--k", v.k, "fiber curvature sign/scale")->required();
  verify_cmd->add_option("--tol", v.tol, "normalized residual tolerance")
      ->capture_default_str();

  SolveArgs s;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "integrate an initial-value problem");
  solve_cmd->add_option("--n", s.n)->required();
  solve_cmd->add_option("--m", s.m)->required();
  solve_cmd->add_option("--lambda", s.lambda)->required();
  solve_cmd->add_option("--k", s.k)->required();
  solve_cmd->add_option("--u0", s.u0, "u(t0)")->required();
  solve_cmd->add_option("--du0", s.du0, "u'(t0)")->capture_default_str();
  solve_cmd->add_option("--f0", s.f0, "f(t0); 0 selects a boundary start")
      ->capture_default_str();
  solve_cmd->add_option("--df0", s.df0, "f'(t0)")->capture_default_str();
  solve_cmd->add_option("--dddu0", s.dddu0,
                        "u'''(t0) for critical starts (u0 = 0)")
      ->capture_default_str();
  solve_cmd->add_option("--t-span", s.t_span, "integration span a,b")
      ->required()
      ->delimiter(',');
  solve_cmd->add_option("--ode-tol", s.ode_tol)->capture_default_str();
  solve_cmd->add_option("--nodes", s.nodes,
                        "sample the profile on this many uniform nodes");
  solve_cmd->add_option("--grid", s.grid_spec, "explicit output grid a,b,N")
      ->delimiter(',');
  solve_cmd->add_option("--output", s.output, "profile CSV path (default stdout)");
  solve_cmd->add_flag("--allow-f-crossing", s.allow_f_crossing,
                      "continue across f = 0 instead of stopping");
  solve_cmd->add_flag("--stop-on-df-zero", s.stop_on_df_zero);
  solve_cmd->add_flag("--stop-on-du-zero", s.stop_on_du_zero);
  solve_cmd->add_option("--t-cap", s.t_cap, "time cap for unbounded spans")
      ->capture_default_str();

  ShootArgs sh;
  CLI::App* shoot_cmd =
      app.add_subcommand("shoot", "solve a two-point problem by shooting");
  shoot_cmd->add_option("--n", sh.n)->required();
  shoot_cmd->add_option("--m", sh.m)->required();
  shoot_cmd->add_option("--lambda", sh.lambda)->required();
  shoot_cmd->add_option("--k", sh.k)->required();
  shoot_cmd->add_option("--target", sh.target,
                        "event target: boundary, critical-min or critical-max");
  shoot_cmd->add_option("--free", sh.free_param,
                        "free parameter: u0/du0/f0/df0 (interior), s (boundary) "
                        "or P (critical)")
      ->required();
  shoot_cmd->add_option("--bracket", sh.bracket, "root bracket a,b")
      ->required()
      ->delimiter(',');
  shoot_cmd->add_option("--start", sh.start_interior,
                        "interior start t0,u0,du0,f0,df0")
      ->delimiter(',');
  shoot_cmd->add_option("--start-boundary", sh.start_boundary,
                        "boundary start t0,u0,s")
      ->delimiter(',');
  shoot_cmd->add_option("--start-critical", sh.start_critical,
                        "critical start t0,w,F,P")
      ->delimiter(',');
  shoot_cmd->add_option("--t-end", sh.t_end, "span end toward the target")
      ->required();
  shoot_cmd->add_option("--t-target", sh.t_target,
                        "required event time for event-kind targets");
  shoot_cmd->add_option("--anchor", sh.anchor_spec, "anchor t,value")
      ->delimiter(',');
  shoot_cmd->add_option("--anchor-component", sh.anchor_component,
                        "anchored component: u, du, f or df")
      ->capture_default_str();
  shoot_cmd->add_option("--tol", sh.tol)->capture_default_str();
  shoot_cmd->add_option("--max-iter", sh.max_iter)->capture_default_str();
  shoot_cmd->add_option("--ode-tol", sh.ode_tol)->capture_default_str();

  CatalogArgs c;
  CLI::App* catalog_cmd =
      app.add_subcommand("catalog", "closed-form solution families");
  catalog_cmd->add_flag("--list", c.list, "print the sign table and families");
  catalog_cmd->add_option("--emit", c.emit, "emit a family profile by name");
  catalog_cmd->add_option("--n", c.n)->capture_default_str();
  catalog_cmd->add_option("--m", c.m)->capture_default_str();
  catalog_cmd->add_option("--grid", c.grid_spec, "sampling grid a,b,N")
      ->delimiter(',');
  catalog_cmd->add_option("--constant", c.constants,
                          "family constant key=value (repeatable)");
  catalog_cmd->add_option("--output", c.output, "profile CSV path (default stdout)");

  ClassifyArgs cl;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "classify the endpoints of a profile");
  classify_cmd->add_option("--input", cl.input, "profile CSV")->required();
  classify_cmd->add_option("--n", cl.n)->required();
  classify_cmd->add_option("--m", cl.m)->required();
  classify_cmd->add_option("--lambda", cl.lambda)->required();
  classify_cmd->add_option("--k", cl.k)->required();
  classify_cmd->add_option("--tol", cl.tol)->capture_default_str();
  classify_cmd->add_option("--oddness-t0", cl.oddness_t0,
                           "also run the parity check about this time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "warpein: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(verify_cmd)) return run_verify(v, common);
    if (app.got_subcommand(solve_cmd)) return run_solve(s, common);
    if (app.got_subcommand(shoot_cmd)) return run_shoot(sh, common);
    if (app.got_subcommand(catalog_cmd)) return run_catalog(c, common);
    if (app.got_subcommand(classify_cmd)) return run_classify(cl, common);
    std::cerr << "warpein: no subcommand selected\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "warpein: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "warpein: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "warpein: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "warpein: unexpected error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
