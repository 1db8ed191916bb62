/** \file report.hpp
 *  \brief Deterministic machine-readable reports (structured JSON document
 *         and a flat key-value text form).
 *
 *  Reports are insertion-ordered documents of scalars, strings, booleans and
 *  nested sections; serialization is bit-reproducible across runs (no
 *  timestamps, no addresses, fixed formatting).
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "warpein/types.hpp"

namespace warpein {

struct ResidualReport;
struct OddnessReport;
struct EigenData;

/** Ordered key-value document with nested sections. */
class ReportDoc {
public:
  ReportDoc();
  ~ReportDoc();
  ReportDoc(ReportDoc&&) noexcept;
  ReportDoc& operator=(ReportDoc&&) noexcept;

  void put(const std::string& key, double value);
  void put(const std::string& key, long value);
  void put(const std::string& key, int value);
  void put(const std::string& key, std::size_t value);
  void put(const std::string& key, bool value);
  void put(const std::string& key, const std::string& value);
  void put(const std::string& key, const char* value);
  /** Creates (or returns) a nested section. */
  ReportDoc section(const std::string& key);

  /** Structured JSON serialization (2-space indent, trailing newline). */
  std::string to_json() const;
  /** Flat serialization: one "dotted.key = value" line per scalar. */
  std::string to_flat() const;

private:
  struct Impl;
  explicit ReportDoc(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

/** Standard sub-reports used by the CLI and tests. */
void put_params(ReportDoc& doc, const SpaceParams& params);
void put_residual_report(ReportDoc& doc, const ResidualReport& report);
void put_endpoint(ReportDoc& doc, const EndpointClass& endpoint);
void put_oddness(ReportDoc& doc, const OddnessReport& report);

/** %.17g rendering used for all floating-point output. */
std::string format_double(double value);

}  // namespace warpein
