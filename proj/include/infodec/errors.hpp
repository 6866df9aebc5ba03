#pragma once

// Exception taxonomy shared by the whole library.
//
// std::invalid_argument covers malformed call arguments; the subclasses below
// let callers (and the CLI exit-code mapping) tell input-data problems apart
// from capacity limits and from numerical breakdown inside an algorithm.

#include <stdexcept>
#include <string>

namespace infodec {

/// Bad value handed to a library call (unknown variable, empty block list,
/// mismatched ground sets, ...).  Alias kept for readability at throw sites.
class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A variable or agent name that does not exist in the model at hand.
class name_error : public argument_error {
 public:
  using argument_error::argument_error;
};

/// Problem with external data (files, embedded tables): syntax, domain
/// violations, normalization failure.
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// data_error with a 1-based line number attached.
class parse_error : public data_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : data_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Request exceeds a hard structural limit (e.g. lattice size blows up).
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An algorithm could not produce a trustworthy result (non-convergence,
/// NaN surfacing mid-computation, arithmetic overflow in exact mode).
class evaluation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Optimization problem has an empty feasible set.
class infeasible_error : public evaluation_error {
 public:
  using evaluation_error::evaluation_error;
};

}  // namespace infodec
