#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rholab {

/// Base class for all library errors. `kind()` is a stable machine-readable
/// name (also what the CLI prints before exiting with status 1).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& message)
      : Error("InvalidArgument", message) {}
};

struct NotInvertibleError : Error {
  NotInvertibleError(std::uint64_t a, std::uint64_t p)
      : Error("NotInvertible",
              std::to_string(a) + " has no inverse mod " + std::to_string(p)) {}
};

/// One kind string per violated group invariant.
struct GroupValidationError : Error {
  using Error::Error;
};

struct DegenerateCollisionError : Error {
  DegenerateCollisionError()
      : Error("DegenerateCollision",
              "collision tags satisfy beta = b; rerun with a fresh seed") {}
};

struct NoCollisionWithinBudgetError : Error {
  explicit NoCollisionWithinBudgetError(std::uint64_t max_steps)
      : Error("NoCollisionWithinBudget",
              "no revisit within " + std::to_string(max_steps) + " steps"),
        max_steps(max_steps) {}
  std::uint64_t max_steps;
};

struct ExhaustedAttemptsError : Error {
  explicit ExhaustedAttemptsError(int attempts)
      : Error("ExhaustedAttempts",
              "no usable collision in " + std::to_string(attempts) + " attempts") {}
};

struct NotMixedWithinBudgetError : Error {
  explicit NotMixedWithinBudgetError(std::uint64_t max_steps)
      : Error("NotMixedWithinBudget",
              "separation target not reached within " + std::to_string(max_steps) +
                  " steps"),
        max_steps(max_steps) {}
  std::uint64_t max_steps;
};

struct NoConvergenceError : Error {
  NoConvergenceError(std::uint64_t cap, double residual)
      : Error("NoConvergence", "power iteration residual " + std::to_string(residual) +
                                   " after " + std::to_string(cap) + " iterations"),
        residual(residual) {}
  double residual;
};

struct MalformedHistoryError : Error {
  MalformedHistoryError()
      : Error("MalformedHistory", "history must end in a doubling symbol (7, 8 or 9)") {}
};

struct InternalCheckError : Error {
  using Error::Error;
};

}  // namespace rholab
