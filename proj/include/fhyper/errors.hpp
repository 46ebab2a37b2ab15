#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fhyper {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (cycle notation, formation grammar, JSON fields).
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// Permutations of different degrees were combined.
struct DegreeMismatch : Error {
  DegreeMismatch(uint32_t a, uint32_t b)
      : Error("degree mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

// A bounded-exhaustive subroutine hit its element bound.  Callers must
// surface this; results are never silently truncated.
struct SizeBoundExceeded : Error {
  std::string subroutine;
  uint64_t size;
  uint64_t bound;
  SizeBoundExceeded(std::string who, uint64_t size_, uint64_t bound_)
      : Error("size bound exceeded in " + who + ": " + std::to_string(size_) +
              " > " + std::to_string(bound_)),
        subroutine(std::move(who)),
        size(size_),
        bound(bound_) {}
};

// A section that was required to be elementary abelian is not.
struct NotElementaryAbelian : Error {
  explicit NotElementaryAbelian(const std::string& msg)
      : Error("not elementary abelian: " + msg) {}
};

// Requested an operation a formation does not support (e.g. an intersection
// method that has no proved algorithm for that class).
struct UnsupportedFormation : Error {
  explicit UnsupportedFormation(const std::string& msg)
      : Error("unsupported formation: " + msg) {}
};

// An internal contract was violated (caller broke a precondition that is
// checked, or an invariant failed).
struct ContractViolation : Error {
  explicit ContractViolation(const std::string& msg)
      : Error("contract violation: " + msg) {}
};

}  // namespace fhyper
