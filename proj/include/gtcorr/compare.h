#pragma once

#include <optional>

#include "gtcorr/approx.h"
#include "gtcorr/correct.h"

// Which ground-truth error, marking or map, biases a statistic more when both
// have the same size v relative to the validation statistic u.
//
// With s = sqrt((u + v)/2), t = sqrt((u - v)/2) and lambda = t/s, one has
// v/u = (1 - lambda^2)/(1 + lambda^2), and marking dominates exactly where
// g(lambda) > 0. Only lambda is exposed; s and t never leave the derivation.

namespace gtcorr {

enum class Dominant { kMarking, kMap };

struct DominanceVerdict {
  Metric metric = Metric::mean();
  double ratio_v_over_u = 0.0;
  Dominant dominant = Dominant::kMarking;
  // v/u below which marking dominates; empty when map dominates for every ratio.
  std::optional<double> threshold;
  double marking_impact = 0.0;
  double map_impact = 0.0;
};

// g(lambda) = (1 + 2 lambda (alpha/gamma - 1) + lambda^2)^beta
//             - (1 - lambda^2)^beta - (2 lambda alpha/gamma)^beta,
// defined on [0, 1] with g(0) = g(1) = 0.
double g_lambda(double lambda, const ApproxConstants& c);

// Interior root where g turns from negative to positive. Located by a
// 10^4-point sign scan of (0, 1) followed by bisection. Empty when g < 0 on
// the whole open interval.
std::optional<double> find_lambda_star(const ApproxConstants& c);

// (1 - lambda*^2) / (1 + lambda*^2), or empty when there is no root.
std::optional<double> impact_threshold(const ApproxConstants& c);

// Computes both impacts directly and reports the larger, along with the
// threshold rule's cutoff. Requires 0 < v < u.
DominanceVerdict compare_impacts(double u, double v, const Metric& metric,
                                 const ApproxConstants& c,
                                 const CorrectionConfig& cfg = CorrectionConfig());

}  // namespace gtcorr
