#include "gtcorr/compare.h"

#include <cmath>
#include <string>

#include "gtcorr/errors.h"

namespace gtcorr {
namespace {

constexpr int kScanPoints = 10000;

}  // namespace

double g_lambda(double lambda, const ApproxConstants& c) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("g_lambda: lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  // Both endpoints are exact zeros; evaluating them through pow leaves
  // rounding residue at lambda = 1.
  if (lambda == 0.0 || lambda == 1.0) return 0.0;
  const double ratio = c.alpha / c.gamma;
  const double l2 = lambda * lambda;
  return std::pow(1.0 + 2.0 * lambda * (ratio - 1.0) + l2, c.beta) -
         std::pow(1.0 - l2, c.beta) - std::pow(2.0 * lambda * ratio, c.beta);
}

std::optional<double> find_lambda_star(const ApproxConstants& c) {
  double prev_lambda = 1.0 / kScanPoints;
  double prev_g = g_lambda(prev_lambda, c);
  for (int i = 2; i < kScanPoints; ++i) {
    const double lambda = static_cast<double>(i) / kScanPoints;
    const double g = g_lambda(lambda, c);
    if (prev_g < 0.0 && g >= 0.0) {
      double lo = prev_lambda;
      double hi = lambda;
      double mid = hi;
      for (int k = 0; k < 200; ++k) {
        mid = 0.5 * (lo + hi);
        const double gm = g_lambda(mid, c);
        if (std::abs(gm) <= 1e-15 || hi - lo <= 1e-16) break;
        if (gm < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return mid;
    }
    prev_lambda = lambda;
    prev_g = g;
  }
  return std::nullopt;
}

std::optional<double> impact_threshold(const ApproxConstants& c) {
  const auto root = find_lambda_star(c);
  if (!root) return std::nullopt;
  const double l2 = *root * *root;
  return (1.0 - l2) / (1.0 + l2);
}

DominanceVerdict compare_impacts(double u, double v, const Metric& metric,
                                 const ApproxConstants& c, const CorrectionConfig& cfg) {
  if (!(v > 0.0)) {
    throw DomainError("compare: ground-truth error must be > 0, got " + std::to_string(v));
  }
  DominanceVerdict verdict;
  verdict.metric = metric;
  verdict.marking_impact = correct_marking(u, v, metric).impact;
  verdict.map_impact = correct_map(u, v, metric, c, cfg).impact;
  verdict.ratio_v_over_u = v / u;
  verdict.threshold = impact_threshold(c);
  verdict.dominant = verdict.marking_impact > verdict.map_impact ? Dominant::kMarking
                                                                 : Dominant::kMap;
  return verdict;
}

}  // namespace gtcorr
