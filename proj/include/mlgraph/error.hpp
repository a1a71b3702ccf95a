#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlgraph {

// Distinct failure classes. Axiom violations are never thrown: they come back
// as ValidationReport entries. These codes cover input that cannot even be
// represented (malformed tables, dangling ids, guards, ...).
enum class ErrorCode {
  structural,
  unsupported,
  schema,
  unknown_element,
  dangling_id,
  guard_exceeded,
  foot_mismatch,
  not_monic,
  not_commutative,
  not_a_cycle,
  algebra_mismatch,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::structural: return "structural";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::schema: return "schema";
    case ErrorCode::unknown_element: return "unknown-element";
    case ErrorCode::dangling_id: return "dangling-id";
    case ErrorCode::guard_exceeded: return "guard-exceeded";
    case ErrorCode::foot_mismatch: return "foot-mismatch";
    case ErrorCode::not_monic: return "not-monic";
    case ErrorCode::not_commutative: return "not-commutative";
    case ErrorCode::not_a_cycle: return "not-a-cycle";
    case ErrorCode::algebra_mismatch: return "algebra-mismatch";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mlgraph
