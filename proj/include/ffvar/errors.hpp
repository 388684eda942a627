#pragma once

#include <stdexcept>
#include <string>

namespace ffvar {

/// Base class for all library errors. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 4; }
};

/// Bad input: non-prime characteristic, reducible modulus, out-of-range degree...
class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// An enumeration or table would exceed a configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// A self-check failed (RH residual, root-finder divergence, broken table...).
class InternalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace ffvar
