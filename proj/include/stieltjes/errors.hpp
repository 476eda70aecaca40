#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stieltjes {

/// An evaluator ran out of blocks or terms before meeting its tolerance.
/// Carries the best-effort partial result.
template <class Result>
class budget_exhausted : public std::runtime_error {
 public:
  budget_exhausted(const std::string& what, Result partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Result& partial() const noexcept { return partial_; }

 private:
  Result partial_;
};

/// Adaptive quadrature could not reach the requested tolerance.
template <class Result>
class tolerance_not_met : public std::runtime_error {
 public:
  tolerance_not_met(const std::string& what, Result best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const Result& best() const noexcept { return best_; }

 private:
  Result best_;
};

/// A series hit its term cap before the terms became negligible.
class convergence_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alternating sum lost too many digits to cancellation.
class cancellation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Oracle cannot reach the requested accuracy with the given truncation.
class accuracy_unreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stieltjes
