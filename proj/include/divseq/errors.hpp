#pragma once

#include <stdexcept>
#include <string>

namespace divseq {

// Malformed or semantically invalid input (bad JSON, violated precondition).
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A sequence lacks a capability (modulus, gap bound) the operation needs.
struct capability_error : std::runtime_error {
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// An exact re-check of a produced claim failed; internal invariant breach.
struct verification_error : std::runtime_error {
  explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace divseq
