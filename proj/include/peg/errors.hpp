#pragma once

#include <stdexcept>
#include <string>

namespace peg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed serialized input (JSON, rationals, graph files).
struct ParseError : Error {
  using Error::Error;
};

// A GameSpec invariant is violated, or an operation's precondition on the
// spec does not hold.
struct InvalidSpec : Error {
  using Error::Error;
};

struct InvalidParams : Error {
  using Error::Error;
};

struct InvalidGraph : Error {
  using Error::Error;
};

// Resource guardrails. CLI maps these to exit code 3.
struct BudgetExceeded : Error {
  using Error::Error;
};

struct OracleBudgetExceeded : BudgetExceeded {
  using BudgetExceeded::BudgetExceeded;
};

struct AlphabetBudgetExceeded : BudgetExceeded {
  using BudgetExceeded::BudgetExceeded;
};

struct UnknownHistory : Error {
  using Error::Error;
};

struct StrategyDomainMismatch : Error {
  using Error::Error;
};

struct UnsupportedSignalModel : Error {
  using Error::Error;
};

struct IncompatibleBaseMeasures : Error {
  using Error::Error;
};

struct PlateauNotReached : Error {
  using Error::Error;
};

struct TailNotReached : Error {
  using Error::Error;
};

// Raised when a game flagged nonnegative produces a decreasing value
// sequence. Monotonicity is a theorem, so this always signals a bug.
struct NonMonotoneValues : Error {
  using Error::Error;
};

// Internal LP failures (infeasible/unbounded sequence-form programs).
struct LPError : Error {
  using Error::Error;
};

}  // namespace peg
