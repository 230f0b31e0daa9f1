#include "gtcorr/sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "gtcorr/errors.h"

namespace gtcorr {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr int kGridColumns = 6;
constexpr int kGridRows = 4;
constexpr double kGridSpacing = 5.0;

Vec2 layout_point(GroundTruthLayout layout, std::size_t index) {
  if (layout == GroundTruthLayout::kOrigin) return {};
  const auto cell = index % (kGridColumns * kGridRows);
  return {static_cast<double>(cell % kGridColumns) * kGridSpacing,
          static_cast<double>(cell / kGridColumns) * kGridSpacing};
}

Record make_record(const SimConfig& cfg, std::size_t index) {
  SplitMix64 rng = record_stream(cfg.seed, index);
  const auto [ax, ay] = rng.normal_pair();
  const auto [mx, my] = rng.normal_pair();
  const Vec2 real = layout_point(cfg.layout, index);
  Record r;
  r.real_gt = real;
  r.algo = {real.x + cfg.sigma_real * ax, real.y + cfg.sigma_real * ay};
  r.marked_gt = {real.x + cfg.sigma_mark * mx + cfg.map_shift.x,
                 real.y + cfg.sigma_mark * my + cfg.map_shift.y};
  return r;
}

double relative_gap(double estimate, double reference) {
  return std::abs(estimate - reference) / reference;
}

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform_open_zero() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

std::pair<double, double> SplitMix64::normal_pair() {
  const double u1 = uniform_open_zero();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

SplitMix64 record_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(SplitMix64::mix(seed) ^ SplitMix64::mix(index + 1));
}

void SimConfig::validate() const {
  if (n < 1) throw DomainError("SimConfig: n must be >= 1");
  if (!(sigma_real > 0.0) || !std::isfinite(sigma_real)) {
    throw DomainError("SimConfig: sigma_real must be > 0");
  }
  if (!(sigma_mark >= 0.0) || !std::isfinite(sigma_mark)) {
    throw DomainError("SimConfig: sigma_mark must be >= 0");
  }
  if (!std::isfinite(map_shift.x) || !std::isfinite(map_shift.y)) {
    throw DomainError("SimConfig: map_shift must be finite");
  }
}

Dataset gen_dataset(const SimConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<Record> records(cfg.n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.n));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) records[i] = make_record(cfg, i);
  };
  if (threads <= 1) {
    work(0, cfg.n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (cfg.n + threads - 1) / threads;
    for (std::size_t begin = 0; begin < cfg.n; begin += chunk) {
      pool.emplace_back(work, begin, std::min(cfg.n, begin + chunk));
    }
  }
  return Dataset(std::move(records));
}

std::vector<Metric> marking_experiment_metrics() {
  return {Metric::mean(), Metric::quantile(0.25), Metric::median(), Metric::quantile(0.75),
          Metric::tail95()};
}

std::vector<Metric> map_experiment_metrics() {
  return {Metric::mean(), Metric::median(), Metric::tail95()};
}

ExperimentReport run_marking_experiment(const SimConfig& cfg, unsigned threads) {
  if (cfg.map_shift.x != 0.0 || cfg.map_shift.y != 0.0) {
    throw DomainError("marking experiment: map_shift must be (0, 0)");
  }
  const Dataset data = gen_dataset(cfg, threads);
  ExperimentReport report;
  report.validation = summary_stats(norms(error_vectors(data, ErrorKind::kValidation)));
  report.marking = summary_stats(norms(error_vectors(data, ErrorKind::kMarking)));
  report.experimental_real = summary_stats(norms(error_vectors(data, ErrorKind::kReal)));
  report.theoretical_real.n = report.validation.n;
  for (const Metric& m : marking_experiment_metrics()) {
    const CorrectionResult r =
        correct_marking(report.validation.stat(m), report.marking.stat(m), m);
    if (m.is_mean()) {
      report.theoretical_real.mean = r.real_stat;
    } else {
      report.theoretical_real.quantiles[m.q()] = r.real_stat;
    }
    const double experimental = report.experimental_real.stat(m);
    report.relative_gaps[m] = relative_gap(r.real_stat, experimental);
    report.validation_gaps[m] = relative_gap(report.validation.stat(m), experimental);
  }
  return report;
}

std::vector<MapSweepEntry> run_map_experiment(const SimConfig& base,
                                              const std::vector<double>& shifts,
                                              const MapExperimentOptions& options) {
  base.validate();
  if (base.sigma_mark != 0.0 && !options.include_marking) {
    throw DomainError(
        "map experiment: sigma_mark must be 0 (the map correction assumes no marking error); "
        "enable include_marking to override");
  }
  std::vector<MapSweepEntry> entries;
  entries.reserve(shifts.size());
  for (double shift : shifts) {
    if (!std::isfinite(shift)) throw DomainError("map experiment: shift must be finite");
    SimConfig cfg = base;
    cfg.map_shift = {shift, shift};
    const Dataset data = gen_dataset(cfg, options.threads);

    MapSweepEntry entry;
    entry.shift = shift;
    entry.v = cfg.map_shift.norm();
    ExperimentReport& report = entry.report;
    report.validation = summary_stats(norms(error_vectors(data, ErrorKind::kValidation)));
    report.experimental_real = summary_stats(norms(error_vectors(data, ErrorKind::kReal)));
    if (options.include_marking) {
      report.marking = summary_stats(norms(error_vectors(data, ErrorKind::kMarking)));
    }
    report.theoretical_real.n = report.validation.n;
    for (const Metric& m : map_experiment_metrics()) {
      const double u = report.validation.stat(m);
      const double experimental = report.experimental_real.stat(m);
      report.validation_gaps[m] = relative_gap(u, experimental);
      try {
        const CorrectionResult r =
            correct_map(u, entry.v, m, builtin_constants(m), options.correction);
        if (m.is_mean()) {
          report.theoretical_real.mean = r.real_stat;
        } else {
          report.theoretical_real.quantiles[m.q()] = r.real_stat;
        }
        report.relative_gaps[m] = relative_gap(r.real_stat, experimental);
      } catch (const InfeasibleCorrection& e) {
        entry.infeasible.push_back(m.label() + ": " + e.what());
      }
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

McEstimate mc_rice_stat(double v, double sigma, const Metric& metric, std::size_t n,
                        std::uint64_t seed) {
  if (n < 1000) throw DomainError("mc_rice_stat: n must be >= 1000");
  const RiceParams params(v, sigma);  // validates v and sigma
  SplitMix64 rng(SplitMix64::mix(seed));
  std::vector<double> draws(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [zx, zy] = rng.normal_pair();
    draws[i] = std::hypot(params.v() + params.sigma() * zx, params.sigma() * zy);
  }
  const auto count = static_cast<double>(n);
  McEstimate est;
  if (metric.is_mean()) {
    double sum = 0.0;
    for (double d : draws) sum += d;
    est.value = sum / count;
    double ss = 0.0;
    for (double d : draws) ss += (d - est.value) * (d - est.value);
    est.std_error = std::sqrt(ss / (count - 1.0) / count);
    return est;
  }
  std::sort(draws.begin(), draws.end());
  const double q = metric.q();
  est.value = sample_quantile(draws, q);
  const double spread = std::sqrt(count * q * (1.0 - q));
  const auto rank = [&](double r) {
    return static_cast<std::size_t>(std::clamp(std::round(r), 0.0, count - 1.0));
  };
  est.std_error = 0.5 * (draws[rank(count * q + spread)] - draws[rank(count * q - spread)]);
  return est;
}

}  // namespace gtcorr
