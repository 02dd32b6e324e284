#pragma once

#include <stdexcept>
#include <string>

namespace trilocc {

// Signature, length, or index mismatch between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Violated operation precondition: zero vectors, rank deficiency, wrong
// state counts, unverifiable witnesses.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A randomized witness search exhausted its retry budget.
struct SearchFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A branch the theory rules out was reached; signals numerical breakdown.
struct InternalContradiction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed state-set file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trilocc
