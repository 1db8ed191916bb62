/** \file errors.hpp
 *  \brief Exception hierarchy of the warpein library.
 *
 *  Two branches below the common base: InputError covers invalid user input
 *  (bad parameters, malformed files, impossible catalog requests) and maps to
 *  CLI exit code 2; NumericalError covers runtime numerical failures
 *  (singular states, bracket failures, iteration limits) and maps to exit
 *  code 3.
 *
 *  Part of warpein.  MIT license; see LICENSE.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace warpein {

/** Common base for every error thrown by the library. */
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/** Invalid user input (exit code 2 in the CLI). */
class InputError : public Error {
public:
  using Error::Error;
};

/** Requested catalog family name does not exist. */
class UnknownFamily : public InputError {
public:
  using InputError::InputError;
};

/** Parameters or constants violate a documented validity constraint. */
class ConstraintViolation : public InputError {
public:
  using InputError::InputError;
};

/** A profile file (or in-memory profile) is structurally invalid. */
class MalformedProfile : public InputError {
public:
  using InputError::InputError;
};

/** A sampling grid is empty, non-monotone, or outside the valid domain. */
class GridError : public InputError {
public:
  using InputError::InputError;
};

/** Too few grid nodes for a requested stencil/extrapolation order. */
class ResolutionError : public InputError {
public:
  using InputError::InputError;
};

/** Numerical failure at run time (exit code 3 in the CLI). */
class NumericalError : public Error {
public:
  using Error::Error;
};

/** Evaluation at a singular state, e.g. u = 0 or f*u = 0. */
class SingularState : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/** Quadrature-based reconstruction hit a zero of u' (b = m u'/u vanishes). */
class SingularQuadrature : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/** Endpoint state matches both the boundary and the critical signature. */
class AmbiguousEndpoint : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/** Root bracket for shooting does not straddle a sign change. */
class BracketError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/** Iteration limit reached; carries the best candidate found so far. */
class MaxIterations : public NumericalError {
public:
  MaxIterations(const std::string& what_arg, double best)
      : NumericalError(what_arg), best_candidate(best) {}
  double best_candidate;
};

/** The two independent Hessian-eigenvalue routes disagree beyond tolerance. */
class ConsistencyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/** Initial data violates the structural conditions at a degenerate start. */
class InvalidInitialState : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace warpein
