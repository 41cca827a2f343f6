#pragma once

#include <stdexcept>
#include <string>

namespace l1geo {

// Malformed input: wrong dimensions, non-finite entries, bad parameters.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition of an operation does not hold
// (empty face intersection, sphere condition violated, non-compact set...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative method stopped before reaching its tolerance, or an LP hit
// its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Results contradict the theory the code relies on; usually a tolerance
// problem on badly conditioned data.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace l1geo
