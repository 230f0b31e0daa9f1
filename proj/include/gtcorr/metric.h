#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace gtcorr {

// Summary statistic of an error-norm distribution: the mean or a quantile.
// Median and 95% tail are not separate kinds; they canonicalize to
// quantile(0.5) and quantile(0.95).
class Metric {
 public:
  enum class Kind { kMean, kQuantile };

  static Metric mean() { return Metric(Kind::kMean, 0.0); }
  static Metric median() { return Metric(Kind::kQuantile, 0.5); }
  static Metric tail95() { return Metric(Kind::kQuantile, 0.95); }
  // Throws DomainError unless 0 < q < 1.
  static Metric quantile(double q);

  // Accepts "mean", "median", "tail", "tail95", "pNN" (percent, e.g. p95,
  // p25, p97.5) and "qX" (probability, e.g. q0.9).
  static Metric parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_mean() const { return kind_ == Kind::kMean; }
  // Probability level; only meaningful for quantiles.
  double q() const { return q_; }

  // "mean", or "p" followed by the percentage ("p50", "p95", "p97.5").
  std::string label() const;

  friend bool operator==(const Metric&, const Metric&) = default;
  friend auto operator<=>(const Metric&, const Metric&) = default;

 private:
  Metric(Kind kind, double q) : kind_(kind), q_(q) {}

  Kind kind_;
  double q_;
};

// The metric's value for Rayleigh(1): sqrt(pi/2) for the mean,
// sqrt(-2 ln(1-q)) for quantile q. Every Rayleigh statistic is gamma * sigma.
double rayleigh_gamma(const Metric& metric);

}  // namespace gtcorr
