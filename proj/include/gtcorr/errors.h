#pragma once

#include <stdexcept>
#include <string>

namespace gtcorr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of a function (negative x, q outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The ground-truth statistic meets or exceeds the validation statistic, so the
// error model has no solution.
class InfeasibleCorrection : public Error {
 public:
  InfeasibleCorrection(std::string stage, const std::string& what)
      : Error(what), stage_(std::move(stage)) {}

  // "marking", "map", or "pipeline:<stage>".
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Approximation constants are only tabulated for mean, median and 95% tail.
class NotBuiltIn : public Error {
 public:
  using Error::Error;
};

// A statistical estimator was given data it cannot fit (too few samples,
// zero variance, nonpositive norms, ...).
class EstimationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or command-line value.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row = -1) : Error(what), row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

}  // namespace gtcorr
