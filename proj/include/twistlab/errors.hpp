#pragma once

#include <stdexcept>
#include <string>

namespace twistlab {

/// Malformed input: bad dimensions, non-symplectic matrices, schema
/// violations, unparsable polynomials. CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration (group closure, Gamma sweep, candidate space) would
/// exceed its configured cap.
class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested a closed-form local term at a place kind where none exists;
/// the caller must supply the datum instead.
class ClosedFormUnavailable : public std::runtime_error {
 public:
  explicit ClosedFormUnavailable(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace twistlab
