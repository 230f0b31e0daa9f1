#include "gtcorr/approx.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "gtcorr/dist.h"

namespace gtcorr {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCertifyStep = 1e-4;

double unit_delta_approx(double v, double alpha, double beta) {
  if (v == 0.0) return 0.0;
  return std::pow(std::pow(v, beta) + std::pow(alpha, beta), 1.0 / beta) - alpha;
}

std::vector<double> exact_gaps_on_grid(std::span<const double> grid, const Metric& metric,
                                       unsigned threads) {
  std::vector<double> gaps(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) gaps[i] = delta_exact(grid[i], 1.0, metric);
  };
  if (threads <= 1) {
    work(0, grid.size());
    return gaps;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (grid.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(grid.size(), begin + chunk));
    }
  }
  return gaps;
}

struct Point {
  double alpha;
  double beta;
  double value;
};

class Objective {
 public:
  Objective(std::span<const double> grid, std::span<const double> gaps)
      : grid_(grid), gaps_(gaps) {}

  Point at(double alpha, double beta) const {
    if (!(alpha > 0.0) || !(beta > 1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
      return {alpha, beta, kInf};
    }
    return {alpha, beta, approx_rmse(grid_, gaps_, alpha, beta)};
  }

 private:
  std::span<const double> grid_;
  std::span<const double> gaps_;
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
Point nelder_mead(const Objective& f, double alpha0, double beta0, int max_iterations,
                  int& iterations) {
  std::array<Point, 3> s = {f.at(alpha0, beta0), f.at(alpha0 + 0.1, beta0),
                            f.at(alpha0, beta0 + 0.1)};
  auto by_value = [](const Point& a, const Point& b) { return a.value < b.value; };
  for (iterations = 0; iterations < max_iterations; ++iterations) {
    std::sort(s.begin(), s.end(), by_value);
    const double size = std::max(std::abs(s[2].alpha - s[0].alpha) + std::abs(s[2].beta - s[0].beta),
                                 std::abs(s[1].alpha - s[0].alpha) + std::abs(s[1].beta - s[0].beta));
    if (size < 1e-11) break;
    const double ca = 0.5 * (s[0].alpha + s[1].alpha);
    const double cb = 0.5 * (s[0].beta + s[1].beta);
    auto along = [&](double t) {
      return f.at(ca + t * (s[2].alpha - ca), cb + t * (s[2].beta - cb));
    };
    const Point reflected = along(-1.0);
    if (reflected.value < s[0].value) {
      const Point expanded = along(-2.0);
      s[2] = expanded.value < reflected.value ? expanded : reflected;
    } else if (reflected.value < s[1].value) {
      s[2] = reflected;
    } else {
      const Point contracted =
          reflected.value < s[2].value ? along(-0.5) : along(0.5);
      if (contracted.value < std::min(reflected.value, s[2].value)) {
        s[2] = contracted;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i] = f.at(0.5 * (s[0].alpha + s[i].alpha), 0.5 * (s[0].beta + s[i].beta));
        }
      }
    }
  }
  return *std::min_element(s.begin(), s.end(), by_value);
}

// Compass search with step halving down to min_step.
Point coordinate_polish(const Objective& f, Point best, double min_step, int max_iterations,
                        int& iterations) {
  double step = 1e-2;
  while (step >= min_step && iterations < max_iterations) {
    bool moved = false;
    for (const auto& [da, db] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
      const Point trial = f.at(best.alpha + da * step, best.beta + db * step);
      ++iterations;
      if (trial.value < best.value) {
        best = trial;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

bool certified(const Objective& f, const Point& p) {
  for (const auto& [da, db] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
    if (f.at(p.alpha + da * kCertifyStep, p.beta + db * kCertifyStep).value < p.value) {
      return false;
    }
  }
  return true;
}

}  // namespace

ApproxConstants builtin_constants(const Metric& metric) {
  ApproxConstants c;
  c.metric = metric;
  c.gamma = rayleigh_gamma(metric);
  if (metric == Metric::mean()) {
    c.alpha = 1.2392;
    c.beta = 2.3064;
    c.rmse = 0.0052;
  } else if (metric == Metric::median()) {
    c.alpha = 1.1471;
    c.beta = 2.3384;
    c.rmse = 0.0032;
  } else if (metric == Metric::tail95()) {
    c.alpha = 0.7870;
    c.beta = 1.9452;
    c.rmse = 0.0038;
  } else {
    throw NotBuiltIn("no built-in approximation constants for " + metric.label() +
                     "; fit them with fit_constants");
  }
  return c;
}

double delta_exact(double v, double sigma, const Metric& metric) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError("delta_exact: v must be >= 0, got " + std::to_string(v));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("delta_exact: sigma must be > 0, got " + std::to_string(sigma));
  }
  if (v == 0.0) return 0.0;
  const double unit_gap = rice_stat(RiceParams(v / sigma, 1.0), metric) - rayleigh_gamma(metric);
  return sigma * std::max(0.0, unit_gap);
}

double delta_approx(double v, double sigma, const ApproxConstants& c) {
  if (!(v >= 0.0)) {
    throw DomainError("delta_approx: v must be >= 0, got " + std::to_string(v));
  }
  if (!(sigma > 0.0)) {
    throw DomainError("delta_approx: sigma must be > 0, got " + std::to_string(sigma));
  }
  return sigma * unit_delta_approx(v / sigma, c.alpha, c.beta);
}

std::vector<double> make_grid(double vmax, double step) {
  if (!(vmax >= 0.0) || !(step > 0.0)) {
    throw DomainError("make_grid: need vmax >= 0 and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor(vmax / step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = static_cast<double>(i) * step;
  return grid;
}

std::vector<double> default_fit_grid() { return make_grid(10.0, 0.01); }

double approx_rmse(std::span<const double> grid, std::span<const double> exact_gaps,
                   double alpha, double beta) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = exact_gaps[i] - unit_delta_approx(grid[i], alpha, beta);
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(grid.size()));
}

ApproxConstants fit_constants(const Metric& metric, std::span<const double> grid,
                              const FitOptions& options) {
  if (grid.empty()) throw DomainError("fit_constants: grid is empty");
  std::vector<double> positive;
  for (double v : grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("fit_constants: grid values must be >= 0");
    }
    if (v > 0.0) positive.push_back(v);
  }
  std::sort(positive.begin(), positive.end());
  positive.erase(std::unique(positive.begin(), positive.end()), positive.end());
  if (positive.size() < 2) {
    // Delta and delta both vanish at v = 0, so zeros carry no information.
    throw EstimationError(
        "fit_constants: need at least two distinct positive grid values to determine "
        "alpha and beta");
  }

  const std::vector<double> gaps = exact_gaps_on_grid(grid, metric, options.threads);
  const Objective objective(grid, gaps);

  int nm_iterations = 0;
  Point best = nelder_mead(objective, options.alpha_start, options.beta_start,
                           options.max_iterations, nm_iterations);
  int polish_iterations = 0;
  best = coordinate_polish(objective, best, 1e-8, options.max_iterations, polish_iterations);

  ApproxConstants c;
  c.metric = metric;
  c.alpha = best.alpha;
  c.beta = best.beta;
  c.gamma = rayleigh_gamma(metric);
  c.rmse = best.value;
  if (!std::isfinite(best.value) || !certified(objective, best)) {
    throw FitError("fit_constants: optimizer did not reach a certified minimum for " +
                       metric.label(),
                   c);
  }
  return c;
}

}  // namespace gtcorr
