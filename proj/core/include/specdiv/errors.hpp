#pragma once

#include <stdexcept>
#include <string>

namespace specdiv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or malformed input (CLI exit code 2).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A brute-force guard was exceeded (CLI exit code 3).
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed (CLI exit code 4).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Maximum discriminant-form order for exhaustive enumeration.
/// Defaults to 36^2 = 1296; overridable via the MAX_FORM_ORDER
/// environment variable.
long max_form_order();

/// Throws GuardExceeded if `order` exceeds max_form_order().
void check_form_order_guard(long order, const std::string& what);

}  // namespace specdiv
