/** \file profile_io.cpp
 *  \brief CSV profile serialization (canonical header, 17 significant
 *         digits, round-trip stable).
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#include "warpein/profile_io.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "warpein/errors.hpp"
#include "warpein/stencil.hpp"

namespace warpein {

namespace {

constexpr std::array<const char*, 8> kColumns = {"t",    "u",  "du", "ddu",
                                                 "dddu", "f",  "df", "ddf"};

std::string format_field(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_field(const std::string& s, std::size_t line_no) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0')) {
    std::ostringstream msg;
    msg << "profile CSV line " << line_no << ": field '" << s
        << "' is not a number";
    throw MalformedProfile(msg.str());
  }
  return v;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double& column_ref(PointState& st, std::size_t canonical_index) {
  switch (canonical_index) {
    case 0: return st.t;
    case 1: return st.u;
    case 2: return st.du;
    case 3: return st.ddu;
    case 4: return st.dddu;
    case 5: return st.f;
    case 6: return st.df;
    default: return st.ddf;
  }
}

}  // namespace

void write_profile_csv(const Profile& profile, std::ostream& out) {
  profile.validate_structure();
  out << "t,u,du,ddu,dddu,f,df,ddf\n";
  for (const PointState& st : profile.states) {
    out << format_field(st.t) << ',' << format_field(st.u) << ','
        << format_field(st.du) << ',' << format_field(st.ddu) << ','
        << format_field(st.dddu) << ',' << format_field(st.f) << ','
        << format_field(st.df) << ',' << format_field(st.ddf) << '\n';
  }
}

void write_profile_csv(const Profile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw InputError("write_profile_csv: cannot open '" + path +
                     "' for writing");
  write_profile_csv(profile, out);
}

Profile read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw MalformedProfile("profile CSV: empty input (no header line)");
  const std::vector<std::string> names = split_csv(line);
  if (names.empty()) throw MalformedProfile("profile CSV: empty header line");

  // map each header name to its canonical column index
  std::vector<std::size_t> canon(names.size());
  std::array<bool, kColumns.size()> present{};
  for (std::size_t j = 0; j < names.size(); ++j) {
    bool found = false;
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      if (names[j] == kColumns[c]) {
        if (present[c])
          throw MalformedProfile("profile CSV: duplicate column '" + names[j] +
                                 "'");
        present[c] = true;
        canon[j] = c;
        found = true;
        break;
      }
    }
    if (!found)
      throw MalformedProfile(
          "profile CSV: unknown column '" + names[j] +
          "' (expected a subset of t,u,du,ddu,dddu,f,df,ddf)");
  }
  if (!present[0] || !present[1] || !present[5])
    throw MalformedProfile("profile CSV: columns t, u and f are mandatory");

  Profile profile;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::vector<std::string> fields = split_csv(body);
    if (fields.size() != names.size()) {
      std::ostringstream msg;
      msg << "profile CSV line " << line_no << ": expected " << names.size()
          << " fields, got " << fields.size();
      throw MalformedProfile(msg.str());
    }
    PointState st;
    for (std::size_t j = 0; j < fields.size(); ++j)
      column_ref(st, canon[j]) = parse_field(fields[j], line_no);
    profile.ts.push_back(st.t);
    profile.states.push_back(st);
  }
  if (profile.ts.empty())
    throw MalformedProfile("profile CSV: no data rows");
  for (std::size_t i = 1; i < profile.ts.size(); ++i)
    if (!(profile.ts[i] > profile.ts[i - 1])) {
      std::ostringstream msg;
      msg << "profile CSV: node times must be strictly increasing (row "
          << i + 1 << ")";
      throw GridError(msg.str());
    }

  // complete any absent derivative columns from the value columns
  std::vector<std::string> missing;
  for (std::size_t c = 0; c < kColumns.size(); ++c)
    if (!present[c]) missing.emplace_back(kColumns[c]);
  if (!missing.empty()) fill_missing_derivatives(profile, missing);
  return profile;
}

Profile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("read_profile_csv: cannot open '" + path +
                     "' for reading");
  return read_profile_csv(in);
}

}  // namespace warpein
