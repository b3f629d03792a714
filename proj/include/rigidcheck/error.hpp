#pragma once

#include <stdexcept>
#include <string>

namespace rigidcheck {

/// Malformed or inconsistent input (bad JSON, wrong arity, point not on V, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Operands taken from two different coefficient fields.
class DomainMismatch : public std::logic_error {
 public:
  explicit DomainMismatch(const std::string& what) : std::logic_error(what) {}
};

/// The Groebner computation hit its basis-size or reduction cap.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rigidcheck
