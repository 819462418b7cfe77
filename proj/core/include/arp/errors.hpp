#pragma once

#include <stdexcept>
#include <string>

namespace arp {

// Input outside an operation's mathematical domain (e >= 1, tof <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Lambert geometry with an undefined transfer plane.
class SingularGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative solver hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

// Malformed input file; line() is 1-based, 0 when not line oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a type invariant.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Failure while evaluating one leg of a visiting sequence.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, int leg)
      : std::runtime_error(what), leg_(leg) {}

  // 0-based leg index within the sequence.
  int leg() const noexcept { return leg_; }

 private:
  int leg_;
};

}  // namespace arp
