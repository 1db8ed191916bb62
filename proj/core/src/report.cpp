/** \file report.cpp
 *  \brief Deterministic report documents over nlohmann::ordered_json.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "warpein/residuals.hpp"
#include "warpein/solver.hpp"

namespace warpein {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

struct ReportDoc::Impl {
  ordered_json node = ordered_json::object();
  // nested sections share ownership of their parent's storage through the
  // child Impl; children hold a pointer into the parent's tree
  std::shared_ptr<Impl> parent;
  ordered_json* target = nullptr;  // where this doc writes (parent-owned)

  ordered_json& ref() { return target ? *target : node; }
  const ordered_json& ref() const { return target ? *target : node; }
};

ReportDoc::ReportDoc() : impl_(std::make_shared<Impl>()) {}
ReportDoc::~ReportDoc() = default;
ReportDoc::ReportDoc(ReportDoc&&) noexcept = default;
ReportDoc& ReportDoc::operator=(ReportDoc&&) noexcept = default;
ReportDoc::ReportDoc(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

void ReportDoc::put(const std::string& key, double value) {
  // store non-finite values as strings (JSON has no literals for them)
  if (std::isfinite(value))
    impl_->ref()[key] = value;
  else
    impl_->ref()[key] = format_double(value);
}
void ReportDoc::put(const std::string& key, long value) {
  impl_->ref()[key] = value;
}
void ReportDoc::put(const std::string& key, int value) {
  impl_->ref()[key] = value;
}
void ReportDoc::put(const std::string& key, std::size_t value) {
  impl_->ref()[key] = value;
}
void ReportDoc::put(const std::string& key, bool value) {
  impl_->ref()[key] = value;
}
void ReportDoc::put(const std::string& key, const std::string& value) {
  impl_->ref()[key] = value;
}
void ReportDoc::put(const std::string& key, const char* value) {
  impl_->ref()[key] = std::string(value);
}

ReportDoc ReportDoc::section(const std::string& key) {
  ordered_json& here = impl_->ref();
  if (!here.contains(key) || !here[key].is_object())
    here[key] = ordered_json::object();
  auto child = std::make_shared<Impl>();
  child->parent = impl_;
  child->target = &here[key];
  return ReportDoc(std::move(child));
}

namespace {

/** Renders doubles with %.17g so JSON and flat forms agree exactly. */
void dump_json(const ordered_json& node, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (node.is_object()) {
    if (node.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (!first) out << ",\n";
      first = false;
      out << pad_in << ordered_json(it.key()).dump() << ": ";
      dump_json(it.value(), out, indent + 1);
    }
    out << "\n" << pad << "}";
  } else if (node.is_number_float()) {
    out << format_double(node.get<double>());
  } else {
    out << node.dump();
  }
}

void dump_flat(const ordered_json& node, std::ostream& out,
               const std::string& prefix) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const ordered_json& v = it.value();
    if (v.is_object()) {
      dump_flat(v, out, key);
    } else if (v.is_number_float()) {
      out << key << " = " << format_double(v.get<double>()) << "\n";
    } else if (v.is_boolean()) {
      out << key << " = " << (v.get<bool>() ? "true" : "false") << "\n";
    } else if (v.is_string()) {
      out << key << " = " << v.get<std::string>() << "\n";
    } else {
      out << key << " = " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string ReportDoc::to_json() const {
  std::ostringstream out;
  dump_json(impl_->ref(), out, 0);
  out << "\n";
  return out.str();
}

std::string ReportDoc::to_flat() const {
  std::ostringstream out;
  dump_flat(impl_->ref(), out, "");
  return out.str();
}

/* ------------------------------------------------------------------ */
/*  Sub-reports                                                         */
/* ------------------------------------------------------------------ */

void put_params(ReportDoc& doc, const SpaceParams& params) {
  ReportDoc sec = doc.section("params");
  sec.put("n", params.n);
  sec.put("m", params.m);
  sec.put("lambda", params.lambda);
  sec.put("k", params.k);
}

void put_residual_report(ReportDoc& doc, const ResidualReport& report) {
  ReportDoc sec = doc.section("residuals");
  sec.put("r_second", report.r_second);
  sec.put("r_compat", report.r_compat);
  sec.put("r_first", report.r_first);
  sec.put("raw_second", report.raw_r_second);
  sec.put("raw_compat", report.raw_r_compat);
  sec.put("raw_first", report.raw_r_first);
  if (report.r_boundary) sec.put("r_boundary", *report.r_boundary);
  sec.put("grid_size", report.grid_size);
  sec.put("tolerance", report.tolerance);
  sec.put("f_positive_interior", report.f_positive_interior);
  sec.put("verdict", report.verdict ? "pass" : "fail");
  ReportDoc mu = doc.section("mu");
  mu.put("min", report.mu_min);
  mu.put("max", report.mu_max);
  mu.put("mean", report.mu_mean);
  mu.put("spread", report.mu_spread);
  mu.put("route_gap", report.mu_route_gap);
}

void put_endpoint(ReportDoc& doc, const EndpointClass& endpoint) {
  doc.put("kind", to_string(endpoint.kind));
  doc.put("t_end", endpoint.t_end);
  doc.put("unbounded", endpoint.unbounded);
  if (!endpoint.note.empty()) doc.put("note", endpoint.note);
  if (!endpoint.diagnostics.empty()) {
    ReportDoc diag = doc.section("diagnostics");
    for (const auto& [key, value] : endpoint.diagnostics) diag.put(key, value);
  }
}

void put_oddness(ReportDoc& doc, const OddnessReport& report) {
  ReportDoc sec = doc.section("oddness");
  sec.put("t0", report.t0);
  sec.put("u_at", report.u_at);
  sec.put("du_at", report.du_at);
  sec.put("ddu_at", report.ddu_at);
  sec.put("d4u_at", report.d4u_at);
  sec.put("du_sq_minus_k", report.du_sq_minus_k);
  sec.put("tol", report.tol);
  sec.put("width", report.width);
  sec.put("pass", report.pass);
}

}  // namespace warpein
