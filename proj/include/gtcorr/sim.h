#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gtcorr/correct.h"
#include "gtcorr/estimate.h"

namespace gtcorr {

// SplitMix64 (Steele, Lea & Flood 2014). Small, fast, portable and fully
// specified, so synthetic datasets are reproducible bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_zero();
  // Box-Muller pair of independent standard normals:
  //   r = sqrt(-2 ln u1), (r cos 2 pi u2, r sin 2 pi u2), u1 in (0,1], u2 in [0,1).
  std::pair<double, double> normal_pair();

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

// Stream for record `index` of a dataset generated with `seed`:
// SplitMix64(mix(seed) ^ mix(index + 1)). Records never share a stream, so the
// output does not depend on how generation is scheduled.
SplitMix64 record_stream(std::uint64_t seed, std::uint64_t index);

enum class GroundTruthLayout {
  kOrigin,  // every real_gt at (0, 0)
  kGrid,    // 24 reference points on a 6 x 4 grid with 5 m spacing
};

struct SimConfig {
  double sigma_real = 1.0;
  double sigma_mark = 0.0;
  Vec2 map_shift;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  GroundTruthLayout layout = GroundTruthLayout::kGrid;

  // Throws DomainError unless n >= 1, sigma_real > 0 and sigma_mark >= 0.
  void validate() const;
};

// real_gt from the layout; algo = real_gt + N(0, sigma_real^2 I);
// marked_gt = real_gt + N(0, sigma_mark^2 I) + map_shift. Each record uses
// its own stream: first Box-Muller pair for the algorithm error, second for
// the marking error. threads = 0 picks the hardware concurrency.
Dataset gen_dataset(const SimConfig& cfg, unsigned threads = 1);

struct ExperimentReport {
  SummaryStats validation;
  SummaryStats marking;  // empty (n = 0) when the dataset carries no marking error model
  SummaryStats experimental_real;
  // Only the corrected metrics are filled.
  SummaryStats theoretical_real;
  // |theoretical - experimental| / experimental per corrected metric.
  std::map<Metric, double> relative_gaps;
  // |validation - experimental| / experimental per corrected metric.
  std::map<Metric, double> validation_gaps;
};

// Metrics corrected in the marking experiment: mean, p25, p50, p75, p95.
std::vector<Metric> marking_experiment_metrics();
// Metrics corrected in the map experiment: mean, median, p95.
std::vector<Metric> map_experiment_metrics();

// Generates a dataset without map shift and corrects every metric of the
// validation error with the matching marking statistic. Throws DomainError if
// cfg.map_shift is nonzero.
ExperimentReport run_marking_experiment(const SimConfig& cfg, unsigned threads = 1);

struct MapSweepEntry {
  double shift = 0.0;  // applied to both axes
  double v = 0.0;      // offset norm, shift * sqrt(2)
  ExperimentReport report;
  // One message per metric whose correction was infeasible; those metrics are
  // missing from report.theoretical_real.
  std::vector<std::string> infeasible;
};

struct MapExperimentOptions {
  // The map correction assumes no marking error. With this set, a nonzero
  // sigma_mark is accepted and the theory holds only approximately.
  bool include_marking = false;
  CorrectionConfig correction = CorrectionConfig();
  unsigned threads = 1;
};

// For each shift s the same seed is reused, so only the offset changes
// between entries, as when shifting the ground truth of one recorded dataset.
std::vector<MapSweepEntry> run_map_experiment(const SimConfig& base,
                                              const std::vector<double>& shifts,
                                              const MapExperimentOptions& options = {});

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Brute-force statistic of |N((v, 0), sigma^2 I)| from n draws. The standard
// error is s/sqrt(n) for the mean; for quantiles it is half the spread of
// the order statistics at ranks nq -/+ sqrt(n q (1-q)). Requires n >= 1000.
McEstimate mc_rice_stat(double v, double sigma, const Metric& metric, std::size_t n,
                        std::uint64_t seed);

}  // namespace gtcorr
