/** \file warpein.hpp
 *  \brief Umbrella header for the warpein library.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include "warpein/catalog.hpp"
#include "warpein/errors.hpp"
#include "warpein/geometry.hpp"
#include "warpein/profile_io.hpp"
#include "warpein/report.hpp"
#include "warpein/residuals.hpp"
#include "warpein/solver.hpp"
#include "warpein/stencil.hpp"
#include "warpein/types.hpp"
