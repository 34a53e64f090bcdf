#pragma once

#include <stdexcept>

namespace cds {

/// Malformed or inconsistent input (bad JSON field, shape mismatch,
/// out-of-range index). CLI exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A constructor declining because its precondition fails on this instance
/// (e.g. an internal qualified edge where none is allowed). CLI exit code 1.
struct refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration or search exceeded its configured budget. CLI exit code 3.
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A postcondition we guarantee by construction failed anyway; a bug.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace cds
