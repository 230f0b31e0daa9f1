#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gtcorr/dist.h"

namespace gtcorr {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// One evaluation point: the algorithm's estimate, the human-marked ground
// truth, and (when known) the true ground truth.
struct Record {
  Vec2 algo;
  Vec2 marked_gt;
  std::optional<Vec2> real_gt;
};

// Evaluation dataset. real_gt is present on every record or on none.
class Dataset {
 public:
  Dataset() = default;
  // Throws DomainError on non-finite coordinates or mixed real_gt presence.
  explicit Dataset(std::vector<Record> records);

  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  bool has_real_gt() const;

 private:
  std::vector<Record> records_;
};

enum class ErrorKind {
  kValidation,  // marked - algo
  kReal,        // real - algo
  kMarking,     // marked - real
};

struct NormalParams {
  double mu = 0.0;
  double sigma = 0.0;
};

// Mean-matched exponential used only as a Q-Q foil.
struct ExponentialParams {
  double mean = 0.0;
  double quantile(double q) const;
};

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  // Probability -> quantile. summary_stats fills 0.25, 0.5, 0.75 and 0.95.
  std::map<double, double> quantiles;

  // Throws DomainError when the level was not computed.
  double quantile(double q) const;
  // Mean or quantile, matching the metric.
  double stat(const Metric& metric) const;
};

std::vector<Vec2> error_vectors(const Dataset& d, ErrorKind kind);
std::vector<double> norms(std::span<const Vec2> vectors);

// Type-7 quantile: linear interpolation between order statistics at the
// one-based rank q(n - 1) + 1. `sorted` must be ascending and nonempty.
double sample_quantile(std::span<const double> sorted, double q);

// Mean and the 0.25/0.5/0.75/0.95 quantiles, plus any extra levels.
SummaryStats summary_stats(std::span<const double> values,
                           std::span<const double> extra_levels = {});

// Per-axis sample mean and standard deviation (divisor n - 1). Throws
// EstimationError for n < 2 or a zero-variance axis.
std::pair<NormalParams, NormalParams> fit_normal_per_axis(std::span<const Vec2> errors);

// Maximum likelihood: sigma = sqrt(sum x^2 / 2n).
RayleighParams fit_rayleigh(std::span<const double> norms);

// 2D moment estimator: v = norm of the sample-mean vector, sigma^2 the
// average of the two per-axis sample variances.
RiceParams fit_rice(std::span<const Vec2> errors);

// Fallback for norm-only data: matches the first two moments of the norm,
// E|X| = rice_mean(v, sigma) and E|X|^2 = v^2 + 2 sigma^2, solving for v/sigma
// by bisection. Collapses to v = 0 when the sample is more dispersed than any
// Rayleigh.
RiceParams fit_rice_norms(std::span<const double> norms);

struct QQPoint {
  double theoretical = 0.0;
  double empirical = 0.0;
};

// (Q((i - 0.5)/n), x_(i)) for the sorted sample.
std::vector<QQPoint> qq_points(std::span<const double> norms,
                               const std::function<double(double)>& theoretical_quantile);

// Largest |theoretical - empirical| over points whose plotting position
// (i - 0.5)/n lies in [p_lo, p_hi].
double qq_max_deviation(std::span<const QQPoint> points, double p_lo, double p_hi);

struct EcdfPoint {
  double x = 0.0;
  double F = 0.0;
};

// Step points (x_(i), i/n) on the sorted sample.
std::vector<EcdfPoint> ecdf_points(std::span<const double> norms);

}  // namespace gtcorr
