#pragma once

#include <stdexcept>
#include <string>

namespace hambound {

// Parameter/domain errors: caller passed something outside the contract.
struct ParamError : std::runtime_error {
  explicit ParamError(const std::string& msg) : std::runtime_error(msg) {}
};

// No admissible degree parameter k exists for the requested (n, q, ell, s).
struct NoValidK : std::runtime_error {
  explicit NoValidK(const std::string& msg) : std::runtime_error(msg) {}
};

// Cross-checked quantities disagree; indicates a bug, never user input.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exhaustive-search budget exceeded.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hambound
