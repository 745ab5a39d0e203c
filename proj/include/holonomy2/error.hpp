#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holonomy2 {

enum class ErrorKind {
  Structural,       // shape or dimension mismatch
  Representation,   // module action violates the representation property
  Exactness,        // short exact sequence is not exact
  Cocycle,          // cochain expected to be closed is not
  Validation,       // input object fails its axioms
  Basis,            // requested basis/section does not exist
  Section,          // supplied map is not a section
  Consistency,      // internal identity failed (should be unreachable)
  Numeric,          // non-finite samples or values
  Unsupported,      // structure outside the supported case
  Degree,           // wrong or inhomogeneous degree
  Order,            // unsorted positions
  Schema,           // malformed serialized input
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Representation: return "representation";
    case ErrorKind::Exactness: return "exactness";
    case ErrorKind::Cocycle: return "cocycle";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Basis: return "basis";
    case ErrorKind::Section: return "section";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Degree: return "degree";
    case ErrorKind::Order: return "order";
    case ErrorKind::Schema: return "schema";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace holonomy2
