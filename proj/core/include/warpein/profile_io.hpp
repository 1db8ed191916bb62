/** \file profile_io.hpp
 *  \brief Delimited-text profile files: one header line, columns exactly
 *         t,u,du,ddu,dddu,f,df,ddf, 17 significant digits.
 *
 *  Missing derivative columns are permitted on read (t, u, f are mandatory);
 *  they are filled by finite-difference stencils and flagged in
 *  Profile::filled_columns.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <iosfwd>
#include <string>

#include "warpein/types.hpp"

namespace warpein {

/** Writes the profile as CSV with the canonical header and %.17g fields. */
void write_profile_csv(const Profile& profile, std::ostream& out);
void write_profile_csv(const Profile& profile, const std::string& path);

/** Reads a profile written by write_profile_csv (or a subset of its
 *  columns).  Throws MalformedProfile on structural defects and GridError
 *  on non-increasing t.  params are not stored in the file and must be
 *  attached by the caller. */
Profile read_profile_csv(std::istream& in);
Profile read_profile_csv(const std::string& path);

}  // namespace warpein
