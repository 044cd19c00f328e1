#pragma once

#include <stdexcept>
#include <string>

namespace imo {

/// Raised when an objective (or one of its basis functions) cannot be
/// evaluated: non-finite value, domain guard hit, dimension mismatch.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace imo
