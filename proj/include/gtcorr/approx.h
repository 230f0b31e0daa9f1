#pragma once

#include <span>
#include <vector>

#include "gtcorr/errors.h"
#include "gtcorr/metric.h"

namespace gtcorr {

// Constants of the algebraic gap approximation
//   delta(v, 1) = (v^beta + alpha^beta)^(1/beta) - alpha
// for one metric, plus gamma = the metric's Rayleigh(1) value.
struct ApproxConstants {
  Metric metric = Metric::mean();
  double alpha = 0.0;  // > 0; delta(v,1) ~ v - alpha for large v
  double beta = 0.0;   // > 1; shape near v = 0
  double gamma = 0.0;
  double rmse = 0.0;   // fit residual over the grid the constants came from
};

// Published constants for mean, median and 95% tail. Any other quantile
// throws NotBuiltIn; use fit_constants for those.
ApproxConstants builtin_constants(const Metric& metric);

// Exact gap Delta(v, sigma) = Rice(v, sigma)_stat - Rayleigh(sigma)_stat.
// Evaluated on the unit scale, so Delta(v, sigma) = sigma Delta(v/sigma, 1)
// holds to rounding.
double delta_exact(double v, double sigma, const Metric& metric);

// sigma * delta(v / sigma, 1).
double delta_approx(double v, double sigma, const ApproxConstants& c);

struct FitOptions {
  double alpha_start = 1.0;
  double beta_start = 2.0;
  int max_iterations = 20000;
  // Worker threads for the Delta grid; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

// Raised when the optimizer cannot certify a local minimum within the
// iteration cap. Carries the best constants seen.
class FitError : public Error {
 public:
  FitError(const std::string& what, ApproxConstants best) : Error(what), best_(best) {}
  const ApproxConstants& best() const { return best_; }

 private:
  ApproxConstants best_;
};

// Grid 0, step, 2 step, ... up to vmax inclusive (within half a step).
std::vector<double> make_grid(double vmax, double step);
// [0, 10] with step 0.01.
std::vector<double> default_fit_grid();

// RMSE of |Delta(v,1) - delta(v,1)| over the grid, for given constants.
double approx_rmse(std::span<const double> grid, std::span<const double> exact_gaps,
                   double alpha, double beta);

// Fits (alpha, beta) minimizing the RMSE of |Delta(v,1) - delta(v,1)| over
// the grid. Nelder-Mead from (alpha_start, beta_start), then a shrinking
// coordinate search; the result is one where no +/-1e-4 coordinate step
// lowers the RMSE. Needs at least two distinct positive grid values.
ApproxConstants fit_constants(const Metric& metric, std::span<const double> grid,
                              const FitOptions& options = {});

}  // namespace gtcorr
