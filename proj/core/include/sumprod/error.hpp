#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumprod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (zero denominator, u = 0,
/// 0 in a set where valuations are needed, malformed input file, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : Error(what + ": requires " + std::to_string(required) + ", budget is " +
              std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A regularization stage discarded every edge.
class StageEmptied : public Error {
 public:
  StageEmptied(std::string stage, double threshold)
      : Error("regularize: stage '" + stage + "' emptied the graph (threshold " +
              std::to_string(threshold) + ")"),
        stage_(std::move(stage)),
        threshold_(threshold) {}

  const std::string& stage() const noexcept { return stage_; }
  double threshold() const noexcept { return threshold_; }

 private:
  std::string stage_;
  double threshold_;
};

}  // namespace sumprod
