#pragma once

#include <stdexcept>
#include <string>

namespace dkq {

/// Invalid parameters supplied by the caller (non prime power q, bad modulus, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested graph would exceed the configured vertex budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent graph file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant that must hold by construction was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dkq
