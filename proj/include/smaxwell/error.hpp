#pragma once

#include <stdexcept>
#include <string>

namespace smaxwell {

/// Invalid input: bad configuration, violated precondition, mismatched shapes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failure while computing (non-finite state, propagator failure on an interval).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace detail
}  // namespace smaxwell
