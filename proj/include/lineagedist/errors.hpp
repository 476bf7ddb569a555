#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lineagedist {

// A series whose stopping rule did not fire within the term budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int terms_used)
      : std::runtime_error(what), terms_used_(terms_used) {}
  int terms_used() const noexcept { return terms_used_; }

 private:
  int terms_used_;
};

// Adaptive quadrature that could not reach the requested tolerance.
// Carries the achieved error estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

// Parameter regime outside an operation's domain (e.g. the critical
// process lambda == mu for the age-averaged distributions).
class RegimeError : public std::domain_error {
  using std::domain_error::domain_error;
};

// Evaluation failure tagged with the lineage size that triggered it.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::int64_t n)
      : std::runtime_error(what), n_(n) {}
  std::int64_t offending_n() const noexcept { return n_; }

 private:
  std::int64_t n_;
};

// A percentile that does not fit in a 64-bit signed integer.
class QuantileOverflowError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lineagedist
