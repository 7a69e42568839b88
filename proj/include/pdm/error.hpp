#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdm {

/// Raised when inputs violate a documented domain or precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine hit its iteration cap. `index()` identifies the
/// eigenpair (or step) that failed.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t index)
      : std::runtime_error(what + " (index " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A linear solve met an exactly singular pivot.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace detail
}  // namespace pdm
