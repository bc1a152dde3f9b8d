#ifndef FLAGSTAB_ERRORS_HPP
#define FLAGSTAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flagstab {

// Base class for every mathematical failure the library can raise.
// Input/usage problems (bad files, bad arguments) use std::runtime_error
// subclasses of their own; see io.hpp.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// An eigenvalue search ran off the rationals.  The base field here is Q,
// not an algebraic closure, so a non-split spectrum is a reportable
// condition rather than a bug.
struct FieldNotSplit : Error {
  using Error::Error;
};

struct NotSolvable : Error {
  using Error::Error;
};

struct ZeroModule : Error {
  using Error::Error;
};

struct NotFaithful : Error {
  using Error::Error;
};

struct InvalidFlag : Error {
  using Error::Error;
};

struct NotAChain : Error {
  using Error::Error;
};

struct CapExceeded : Error {
  using Error::Error;
};

struct SizeCap : Error {
  using Error::Error;
};

struct NoFIP : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct SignatureMismatch : Error {
  using Error::Error;
};

struct AtBoundary : Error {
  using Error::Error;
};

struct ZeroVector : Error {
  using Error::Error;
};

}  // namespace flagstab

#endif
