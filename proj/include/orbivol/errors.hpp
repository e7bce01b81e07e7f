#pragma once

#include <stdexcept>
#include <string>

namespace orbivol {

// Arguments outside an operation's documented domain.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A structural invariant failed on data that was required to satisfy it
// (non-Lorentz matrix, point off the hyperboloid, non-elliptic input, ...).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative method exhausted its budget; carries the last iterate so the
// caller can inspect how far it got.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double last_iterate)
      : std::runtime_error(what), last_iterate_(last_iterate) {}
  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

}  // namespace orbivol
