#pragma once

#include <stdexcept>
#include <string>

namespace hodgejac {

// Input that violates a mathematical precondition (invalid type/rank,
// non-dominant weight where dominance is required, wrong arity, ...).
// The CLI maps this to exit code 3.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed input that turned out to be degenerate
// (rank collapse, singular section where smoothness is required).
// The CLI maps this to exit code 4.
struct degenerate_error : std::runtime_error {
  explicit degenerate_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (polynomial files, weight lists).
// The CLI maps this to exit code 2.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hodgejac
