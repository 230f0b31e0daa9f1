#pragma once

#include <optional>
#include <utility>

#include "gtcorr/approx.h"
#include "gtcorr/metric.h"

namespace gtcorr {

// Convergence settings for the sigma bisection of the map correction.
class CorrectionConfig {
 public:
  // Throws DomainError unless epsilon > 0 and max_iterations >= 1.
  explicit CorrectionConfig(double epsilon = 1e-9, int max_iterations = 200);

  double epsilon() const { return epsilon_; }
  int max_iterations() const { return max_iterations_; }

 private:
  double epsilon_;
  int max_iterations_;
};

struct ImpactBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Statistics seen at each stage of correct_pipeline.
struct PipelineProvenance {
  double validation = 0.0;     // input u
  double after_map = 0.0;      // validation statistic on an accurate map
  double after_marking = 0.0;  // final real statistic
};

struct CorrectionResult {
  double real_stat = 0.0;   // corrected |Err^real| statistic (m)
  double sigma_real = 0.0;  // Rayleigh scale of the real error; real_stat = sigma_real * gamma
  double impact = 0.0;      // validation - real
  Metric metric = Metric::mean();
  std::optional<ImpactBounds> bounds;  // marking corrections only
  std::optional<PipelineProvenance> provenance;
};

// Removes zero-mean isotropic marking error: real = sqrt(u^2 - v^2), valid for
// the mean and for every quantile since all Rayleigh statistics are linear in
// sigma. u and v are the validation and marking statistics of the same metric.
// Throws InfeasibleCorrection when v >= u.
CorrectionResult correct_marking(double u, double v, const Metric& metric);

// v^2 / (2u) < u - sqrt(u^2 - v^2) < v^2 / (2u - v) for 0 < v < u.
ImpactBounds marking_impact_bounds(double u, double v);

// Real-error tail/median and tail/mean ratios under the Rayleigh model.
std::pair<double, double> tail_ratios();

// Removes a constant map translation of norm v. Solves
//   f(sigma) = (u/sigma + alpha - gamma)^beta - (v/sigma)^beta - alpha^beta = 0
// by bisection on ((u - v)/gamma, (u - v)/(gamma - alpha)); f is strictly
// decreasing there. Throws InfeasibleCorrection when v >= u and DomainError if
// the constants belong to another metric.
CorrectionResult correct_map(double u, double v, const Metric& metric, const ApproxConstants& c,
                             const CorrectionConfig& cfg = CorrectionConfig());

// Map correction with built-in constants, then marking correction. The two
// stages are applied in sequence; no joint model of both errors is attempted.
CorrectionResult correct_pipeline(double u, double map_v, double mark_v, const Metric& metric,
                                  const CorrectionConfig& cfg = CorrectionConfig());
// Same, with caller-supplied constants for the map stage.
CorrectionResult correct_pipeline(double u, double map_v, double mark_v, const Metric& metric,
                                  const ApproxConstants& c, const CorrectionConfig& cfg);

}  // namespace gtcorr
