#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace iforms {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched variable counts, degrees, or argument sizes.
struct MismatchError : Error {
  explicit MismatchError(const std::string& msg) : Error(msg) {}
};

/// Invalid value for the requested operation (all-zero input, zero point,
/// broken antisymmetry, parameter out of range, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A mathematical precondition failed.  Every violated condition is listed
/// individually in `violations`.
struct PreconditionError : Error {
  std::vector<std::string> violations;

  explicit PreconditionError(std::vector<std::string> v)
      : Error(join(v)), violations(std::move(v)) {}
  explicit PreconditionError(const std::string& msg)
      : PreconditionError(std::vector<std::string>{msg}) {}

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "precondition failed";
    for (const auto& m : v) {
      s += "; ";
      s += m;
    }
    return s;
  }
};

} // namespace iforms
