#include "gtcorr/estimate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gtcorr/errors.h"

namespace gtcorr {
namespace {

constexpr double kDefaultLevels[] = {0.25, 0.5, 0.75, 0.95};

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw EstimationError(std::string(what) + ": empty sample");
}

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

bool finite(const Vec2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Sample variance (divisor n - 1) via a two-pass sum.
double sample_variance(std::span<const double> xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

double Vec2::norm() const { return std::hypot(x, y); }

Dataset::Dataset(std::vector<Record> records) : records_(std::move(records)) {
  if (records_.empty()) return;
  const bool with_real = records_.front().real_gt.has_value();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& r = records_[i];
    if (r.real_gt.has_value() != with_real) {
      throw DomainError("Dataset: record " + std::to_string(i) +
                        " disagrees with record 0 on real ground-truth presence");
    }
    if (!finite(r.algo) || !finite(r.marked_gt) || (r.real_gt && !finite(*r.real_gt))) {
      throw DomainError("Dataset: record " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
}

bool Dataset::has_real_gt() const {
  return !records_.empty() && records_.front().real_gt.has_value();
}

double ExponentialParams::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("exponential quantile: q must lie in (0, 1)");
  return -mean * std::log1p(-q);
}

double SummaryStats::quantile(double q) const {
  auto it = quantiles.find(q);
  if (it == quantiles.end()) {
    throw DomainError("SummaryStats: quantile " + std::to_string(q) + " was not computed");
  }
  return it->second;
}

double SummaryStats::stat(const Metric& metric) const {
  return metric.is_mean() ? mean : quantile(metric.q());
}

std::vector<Vec2> error_vectors(const Dataset& d, ErrorKind kind) {
  if (kind != ErrorKind::kValidation && !d.has_real_gt()) {
    throw EstimationError("error_vectors: real and marking errors need real ground truth");
  }
  std::vector<Vec2> out;
  out.reserve(d.size());
  for (const Record& r : d.records()) {
    switch (kind) {
      case ErrorKind::kValidation:
        out.push_back(r.marked_gt - r.algo);
        break;
      case ErrorKind::kReal:
        out.push_back(*r.real_gt - r.algo);
        break;
      case ErrorKind::kMarking:
        out.push_back(r.marked_gt - *r.real_gt);
        break;
    }
  }
  return out;
}

std::vector<double> norms(std::span<const Vec2> vectors) {
  std::vector<double> out(vectors.size());
  std::transform(vectors.begin(), vectors.end(), out.begin(),
                 [](const Vec2& p) { return p.norm(); });
  return out;
}

double sample_quantile(std::span<const double> sorted, double q) {
  require_nonempty(sorted.size(), "sample_quantile");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("sample_quantile: q must lie in [0, 1]");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummaryStats summary_stats(std::span<const double> values, std::span<const double> extra_levels) {
  require_nonempty(values.size(), "summary_stats");
  const std::vector<double> sorted = sorted_copy(values);
  SummaryStats s;
  s.n = sorted.size();
  s.mean = mean_of(sorted);
  for (double q : kDefaultLevels) s.quantiles[q] = sample_quantile(sorted, q);
  for (double q : extra_levels) s.quantiles[q] = sample_quantile(sorted, q);
  return s;
}

std::pair<NormalParams, NormalParams> fit_normal_per_axis(std::span<const Vec2> errors) {
  if (errors.size() < 2) throw EstimationError("fit_normal_per_axis: need at least 2 samples");
  std::vector<double> xs(errors.size());
  std::vector<double> ys(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    xs[i] = errors[i].x;
    ys[i] = errors[i].y;
  }
  auto fit_axis = [](std::span<const double> v, const char* axis) {
    NormalParams p;
    p.mu = mean_of(v);
    p.sigma = std::sqrt(sample_variance(v, p.mu));
    if (!(p.sigma > 0.0)) {
      throw EstimationError(std::string("fit_normal_per_axis: zero variance on the ") + axis +
                            " axis");
    }
    return p;
  };
  return {fit_axis(xs, "x"), fit_axis(ys, "y")};
}

RayleighParams fit_rayleigh(std::span<const double> norms) {
  require_nonempty(norms.size(), "fit_rayleigh");
  double sum_sq = 0.0;
  for (double x : norms) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw EstimationError("fit_rayleigh: norms must be positive, got " + std::to_string(x));
    }
    sum_sq += x * x;
  }
  return RayleighParams(std::sqrt(sum_sq / (2.0 * static_cast<double>(norms.size()))));
}

RiceParams fit_rice(std::span<const Vec2> errors) {
  if (errors.size() < 2) throw EstimationError("fit_rice: need at least 2 samples");
  std::vector<double> xs(errors.size());
  std::vector<double> ys(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    xs[i] = errors[i].x;
    ys[i] = errors[i].y;
  }
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  const double var = 0.5 * (sample_variance(xs, mx) + sample_variance(ys, my));
  if (!(var > 0.0)) throw EstimationError("fit_rice: zero variance, sigma undefined");
  return RiceParams(std::hypot(mx, my), std::sqrt(var));
}

RiceParams fit_rice_norms(std::span<const double> norms) {
  if (norms.size() < 2) throw EstimationError("fit_rice_norms: need at least 2 samples");
  double m1 = 0.0;
  double m2 = 0.0;
  for (double x : norms) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw EstimationError("fit_rice_norms: norms must be finite and >= 0");
    }
    m1 += x;
    m2 += x * x;
  }
  m1 /= static_cast<double>(norms.size());
  m2 /= static_cast<double>(norms.size());
  if (!(m2 > 0.0)) throw EstimationError("fit_rice_norms: all norms are zero");
  const double target = m1 / std::sqrt(m2);
  if (target >= 1.0) throw EstimationError("fit_rice_norms: zero dispersion, sigma undefined");

  // ratio(k) = E|X| / sqrt(E|X|^2) for Rice(k, 1); increases from sqrt(pi)/2 to 1.
  auto ratio = [](double k) { return rice_mean(RiceParams(k, 1.0)) / std::sqrt(k * k + 2.0); };
  double k = 0.0;
  if (target > ratio(0.0)) {
    double lo = 0.0;
    double hi = 1.0;
    while (ratio(hi) < target && hi < 1e8) {
      lo = hi;
      hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (ratio(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    k = 0.5 * (lo + hi);
  }
  const double sigma = std::sqrt(m2 / (k * k + 2.0));
  return RiceParams(k * sigma, sigma);
}

std::vector<QQPoint> qq_points(std::span<const double> norms,
                               const std::function<double(double)>& theoretical_quantile) {
  require_nonempty(norms.size(), "qq_points");
  const std::vector<double> sorted = sorted_copy(norms);
  const auto n = static_cast<double>(sorted.size());
  std::vector<QQPoint> out(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / n;
    out[i] = {theoretical_quantile(p), sorted[i]};
  }
  return out;
}

double qq_max_deviation(std::span<const QQPoint> points, double p_lo, double p_hi) {
  const auto n = static_cast<double>(points.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / n;
    if (p < p_lo || p > p_hi) continue;
    worst = std::max(worst, std::abs(points[i].theoretical - points[i].empirical));
  }
  return worst;
}

std::vector<EcdfPoint> ecdf_points(std::span<const double> norms) {
  require_nonempty(norms.size(), "ecdf_points");
  const std::vector<double> sorted = sorted_copy(norms);
  const auto n = static_cast<double>(sorted.size());
  std::vector<EcdfPoint> out(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out[i] = {sorted[i], static_cast<double>(i + 1) / n};
  }
  return out;
}

}  // namespace gtcorr
