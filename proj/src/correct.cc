#include "gtcorr/correct.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gtcorr/errors.h"

namespace gtcorr {
namespace {

void require_statistics(double u, double v, const char* stage) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError(std::string(stage) + ": validation statistic must be > 0, got " +
                      std::to_string(u));
  }
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(stage) + ": ground-truth statistic must be >= 0, got " +
                      std::to_string(v));
  }
  if (v >= u) {
    throw InfeasibleCorrection(
        stage, std::string(stage) + ": ground-truth error " + std::to_string(v) +
                   " must be smaller than validation error " + std::to_string(u));
  }
}

}  // namespace

CorrectionConfig::CorrectionConfig(double epsilon, int max_iterations)
    : epsilon_(epsilon), max_iterations_(max_iterations) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("CorrectionConfig: epsilon must be > 0");
  }
  if (max_iterations < 1) {
    throw DomainError("CorrectionConfig: max_iterations must be >= 1");
  }
}

CorrectionResult correct_marking(double u, double v, const Metric& metric) {
  require_statistics(u, v, "marking");
  CorrectionResult r;
  r.metric = metric;
  r.real_stat = std::sqrt((u - v) * (u + v));
  r.sigma_real = r.real_stat / rayleigh_gamma(metric);
  r.impact = u - r.real_stat;
  r.bounds = marking_impact_bounds(u, v);
  return r;
}

ImpactBounds marking_impact_bounds(double u, double v) {
  require_statistics(u, v, "marking");
  return {v * v / (2.0 * u), v * v / (2.0 * u - v)};
}

std::pair<double, double> tail_ratios() {
  const double tail = rayleigh_gamma(Metric::tail95());
  return {tail / rayleigh_gamma(Metric::median()), tail / rayleigh_gamma(Metric::mean())};
}

CorrectionResult correct_map(double u, double v, const Metric& metric, const ApproxConstants& c,
                             const CorrectionConfig& cfg) {
  require_statistics(u, v, "map");
  if (!(c.metric == metric)) {
    throw DomainError("map: constants are for " + c.metric.label() + " but the metric is " +
                      metric.label());
  }
  const double alpha = c.alpha;
  const double beta = c.beta;
  const double gamma = c.gamma;
  if (!(gamma > alpha)) {
    throw std::logic_error("map: constants violate gamma > alpha for " + metric.label());
  }

  CorrectionResult r;
  r.metric = metric;
  if (v == 0.0) {
    // Rice(0, sigma) is Rayleigh(sigma); the root is sigma_min exactly.
    r.sigma_real = u / gamma;
    r.real_stat = u;
    r.impact = 0.0;
    return r;
  }

  const double alpha_pow = std::pow(alpha, beta);
  auto f = [&](double sigma) {
    return std::pow(u / sigma + alpha - gamma, beta) - std::pow(v / sigma, beta) - alpha_pow;
  };

  double lo = (u - v) / gamma;
  double hi = (u - v) / (gamma - alpha);
  if (!(f(lo) >= 0.0) || !(f(hi) < 0.0)) {
    throw std::logic_error("map: f does not change sign over the sigma bracket");
  }
  const int needed = static_cast<int>(std::ceil(std::log2((hi - lo) / cfg.epsilon())));
  if (needed > cfg.max_iterations()) {
    throw DomainError("map: max_iterations " + std::to_string(cfg.max_iterations()) +
                      " cannot reach epsilon " + std::to_string(cfg.epsilon()) + " (needs " +
                      std::to_string(needed) + ")");
  }
  for (int i = 0; i < cfg.max_iterations() && hi - lo > cfg.epsilon(); ++i) {
    const double sigma = 0.5 * (lo + hi);
    if (f(sigma) < 0.0) {
      hi = sigma;
    } else {
      lo = sigma;
    }
  }
  // f(u / gamma) = -(v gamma / u)^beta < 0, so the root never exceeds u / gamma.
  const double sigma = std::min(0.5 * (lo + hi), u / gamma);
  r.sigma_real = sigma;
  r.real_stat = sigma * gamma;
  r.impact = u - r.real_stat;
  return r;
}

CorrectionResult correct_pipeline(double u, double map_v, double mark_v, const Metric& metric,
                                  const CorrectionConfig& cfg) {
  return correct_pipeline(u, map_v, mark_v, metric, builtin_constants(metric), cfg);
}

CorrectionResult correct_pipeline(double u, double map_v, double mark_v, const Metric& metric,
                                  const ApproxConstants& c, const CorrectionConfig& cfg) {
  CorrectionResult after_map;
  try {
    after_map = correct_map(u, map_v, metric, c, cfg);
  } catch (const InfeasibleCorrection& e) {
    throw InfeasibleCorrection("pipeline:map", std::string("pipeline map stage: ") + e.what());
  }
  CorrectionResult final_result;
  try {
    final_result = correct_marking(after_map.real_stat, mark_v, metric);
  } catch (const InfeasibleCorrection& e) {
    throw InfeasibleCorrection("pipeline:marking",
                               std::string("pipeline marking stage: ") + e.what());
  }
  // The marking bounds describe only the second stage, not the total impact.
  final_result.bounds.reset();
  final_result.impact = u - final_result.real_stat;
  final_result.provenance = PipelineProvenance{u, after_map.real_stat, final_result.real_stat};
  return final_result;
}

}  // namespace gtcorr
