#pragma once

#include <stdexcept>
#include <string>

namespace subsetdag {

// Bad user input: malformed files, non-edges in a target set, out-of-range ids.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input that is well-formed but violates an operation's precondition
// (e.g. a Hasse diagram requested for a DAG with v-structures).
struct PreconditionError : InputError {
  using InputError::InputError;
};

// Exhaustive routines refuse instances above their documented size cap.
struct BudgetError : std::length_error {
  using std::length_error::length_error;
};

// A hand-built graph broke a structural invariant (directed cycle, ...).
struct StructuralError : std::logic_error {
  using std::logic_error::logic_error;
};

// A search algorithm sent an intervention the oracle cannot answer.
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace subsetdag
