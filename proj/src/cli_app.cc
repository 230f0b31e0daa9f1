#include "gtcorr/cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>

#include "gtcorr/approx.h"
#include "gtcorr/compare.h"
#include "gtcorr/correct.h"
#include "gtcorr/csv_io.h"
#include "gtcorr/errors.h"
#include "gtcorr/estimate.h"
#include "gtcorr/report.h"
#include "gtcorr/sim.h"

namespace gtcorr::cli {
namespace {

using nlohmann::json;

struct Flags {
  bool pretty = false;
  std::string input;
  std::string output;
  std::vector<std::string> metrics;
  std::string metric = "mean";
  std::string kind = "validation";
  std::string dist = "rayleigh";
  std::string layout = "grid";
  std::string shift = "0";
  std::string shifts = "1,2,3,4,5,6";
  double val = 0.0;
  double gt = 0.0;
  double map_gt = 0.0;
  double mark_gt = 0.0;
  double eps = 1e-9;
  double vmax = 10.0;
  double step = 0.01;
  double sigma_real = 1.0;
  double sigma_mark = 0.0;
  std::size_t n = 100000;
  std::uint64_t seed = 1;
  bool norm_only = false;
  bool include_marking = false;
};

ErrorKind parse_kind(const std::string& text) {
  if (text == "validation") return ErrorKind::kValidation;
  if (text == "real") return ErrorKind::kReal;
  if (text == "marking") return ErrorKind::kMarking;
  throw ParseError("unknown error kind '" + text + "' (expected validation, real or marking)");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_real(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

Vec2 parse_shift(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() == 1) return {v[0], v[0]};
  if (v.size() == 2) return {v[0], v[1]};
  throw ParseError("--shift takes R or R,R");
}

// Built-in constants when tabulated, otherwise fitted on the default grid.
ApproxConstants constants_for(const Metric& metric, std::vector<std::string>& warnings) {
  try {
    return builtin_constants(metric);
  } catch (const NotBuiltIn&) {
    warnings.push_back("no tabulated constants for " + metric.label() +
                       "; fitted on v in [0, 10] step 0.01");
    return fit_constants(metric, default_fit_grid());
  }
}

std::vector<double> norms_of(const Dataset& d, const std::string& kind) {
  return norms(error_vectors(d, parse_kind(kind)));
}

void write_points_csv(const std::string& path, const char* header,
                      const std::vector<std::pair<double, double>>& points) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << header << '\n';
  char buf[64];
  for (const auto& [a, b] : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a, b);
    out << buf;
  }
  if (!out) throw ParseError("failed writing '" + path + "'");
}

json path_or_null(const std::string& path) { return path.empty() ? json(nullptr) : json(path); }

json stats_for(const std::vector<double>& values, const std::vector<Metric>& metrics) {
  std::vector<double> levels;
  for (const Metric& m : metrics) {
    if (!m.is_mean()) levels.push_back(m.q());
  }
  const SummaryStats s = summary_stats(values, levels);
  json requested = json::object();
  for (const Metric& m : metrics) requested[m.label()] = s.stat(m);
  json j = to_json(s);
  j["requested"] = requested;
  return j;
}

ReportDocument cmd_stats(const Flags& f) {
  ReportDocument doc{"stats"};
  std::vector<Metric> metrics;
  if (f.metrics.empty()) {
    metrics = marking_experiment_metrics();
  } else {
    for (const std::string& m : f.metrics) metrics.push_back(Metric::parse(m));
  }
  json labels = json::array();
  for (const Metric& m : metrics) labels.push_back(m.label());
  doc.inputs = {{"input", f.input}, {"metrics", labels}};
  const Dataset d = ingest_csv(f.input);
  doc.results["records"] = d.size();
  doc.results["validation"] = stats_for(norms_of(d, "validation"), metrics);
  if (d.has_real_gt()) {
    doc.results["real"] = stats_for(norms_of(d, "real"), metrics);
    doc.results["marking"] = stats_for(norms_of(d, "marking"), metrics);
  } else {
    doc.warnings.push_back("dataset has no real ground truth; only validation error reported");
  }
  return doc;
}

ReportDocument cmd_fit(const Flags& f) {
  ReportDocument doc{"fit"};
  doc.inputs = {{"input", f.input}, {"dist", f.dist}, {"kind", f.kind}, {"norm_only", f.norm_only}};
  const Dataset d = ingest_csv(f.input);
  const std::vector<Vec2> errors = error_vectors(d, parse_kind(f.kind));
  if (f.dist == "rayleigh") {
    doc.results["params"] = to_json(fit_rayleigh(norms(errors)));
  } else if (f.dist == "rice") {
    doc.results["params"] = f.norm_only ? to_json(fit_rice_norms(norms(errors)))
                                        : to_json(fit_rice(errors));
  } else if (f.dist == "normal") {
    const auto [x, y] = fit_normal_per_axis(errors);
    doc.results["x"] = to_json(x);
    doc.results["y"] = to_json(y);
  } else {
    throw ParseError("unknown distribution '" + f.dist + "' (expected rayleigh, rice or normal)");
  }
  return doc;
}

ReportDocument cmd_qq(const Flags& f) {
  ReportDocument doc{"qq"};
  doc.inputs = {{"input", f.input},
                {"dist", f.dist},
                {"kind", f.kind},
                {"output", path_or_null(f.output)}};
  const Dataset d = ingest_csv(f.input);
  const std::vector<Vec2> errors = error_vectors(d, parse_kind(f.kind));
  const std::vector<double> sample = norms(errors);
  std::function<double(double)> quantile;
  if (f.dist == "rayleigh") {
    const RayleighParams p = fit_rayleigh(sample);
    doc.results["params"] = to_json(p);
    quantile = [p](double q) { return rayleigh_quantile(p, q); };
  } else if (f.dist == "rice") {
    const RiceParams p = fit_rice(errors);
    doc.results["params"] = to_json(p);
    quantile = [p](double q) { return rice_quantile(p, q); };
  } else if (f.dist == "exponential") {
    const ExponentialParams p{summary_stats(sample).mean};
    doc.results["params"] = {{"family", "exponential"}, {"mean", p.mean}};
    quantile = [p](double q) { return p.quantile(q); };
  } else {
    throw ParseError("unknown distribution '" + f.dist +
                     "' (expected rayleigh, rice or exponential)");
  }
  const std::vector<QQPoint> points = qq_points(sample, quantile);
  doc.results["max_deviation_p01_p99"] = qq_max_deviation(points, 0.01, 0.99);
  std::vector<std::pair<double, double>> pairs;
  for (const QQPoint& p : points) pairs.emplace_back(p.theoretical, p.empirical);
  if (!f.output.empty()) {
    write_points_csv(f.output, "theoretical,empirical", pairs);
    doc.results["points_written"] = pairs.size();
  } else {
    doc.results["points"] = pairs;
  }
  return doc;
}

ReportDocument cmd_ecdf(const Flags& f) {
  ReportDocument doc{"ecdf"};
  doc.inputs = {{"input", f.input}, {"kind", f.kind}, {"output", path_or_null(f.output)}};
  const Dataset d = ingest_csv(f.input);
  std::vector<std::pair<double, double>> pairs;
  for (const EcdfPoint& p : ecdf_points(norms_of(d, f.kind))) pairs.emplace_back(p.x, p.F);
  if (!f.output.empty()) {
    write_points_csv(f.output, "x,F", pairs);
    doc.results["points_written"] = pairs.size();
  } else {
    doc.results["points"] = pairs;
  }
  return doc;
}

ReportDocument cmd_correct_marking(const Flags& f) {
  ReportDocument doc{"correct marking"};
  doc.inputs = {{"val", f.val}, {"gt", f.gt}, {"metric", f.metric}};
  doc.results = to_json(correct_marking(f.val, f.gt, Metric::parse(f.metric)));
  return doc;
}

ReportDocument cmd_correct_map(const Flags& f) {
  ReportDocument doc{"correct map"};
  doc.inputs = {{"val", f.val}, {"gt", f.gt}, {"metric", f.metric}, {"eps", f.eps}};
  const Metric metric = Metric::parse(f.metric);
  const ApproxConstants c = constants_for(metric, doc.warnings);
  doc.results = to_json(correct_map(f.val, f.gt, metric, c, CorrectionConfig(f.eps)));
  doc.results["constants"] = to_json(c);
  return doc;
}

ReportDocument cmd_pipeline(const Flags& f) {
  ReportDocument doc{"correct pipeline"};
  doc.inputs = {{"val", f.val},
                {"map_gt", f.map_gt},
                {"mark_gt", f.mark_gt},
                {"metric", f.metric},
                {"eps", f.eps}};
  const Metric metric = Metric::parse(f.metric);
  const ApproxConstants c = constants_for(metric, doc.warnings);
  doc.results =
      to_json(correct_pipeline(f.val, f.map_gt, f.mark_gt, metric, c, CorrectionConfig(f.eps)));
  doc.warnings.push_back(
      "map and marking corrections are applied in sequence; their joint effect is approximate");
  return doc;
}

ReportDocument cmd_compare(const Flags& f) {
  ReportDocument doc{"compare"};
  doc.inputs = {{"val", f.val}, {"gt", f.gt}, {"metric", f.metric}, {"eps", f.eps}};
  const Metric metric = Metric::parse(f.metric);
  const ApproxConstants c = constants_for(metric, doc.warnings);
  doc.results = to_json(compare_impacts(f.val, f.gt, metric, c, CorrectionConfig(f.eps)));
  const auto lambda = find_lambda_star(c);
  doc.results["lambda_star"] = lambda ? json(*lambda) : json(nullptr);
  return doc;
}

ReportDocument cmd_fit_constants(const Flags& f) {
  ReportDocument doc{"fit-constants"};
  doc.inputs = {{"metric", f.metric}, {"vmax", f.vmax}, {"step", f.step}};
  const Metric metric = Metric::parse(f.metric);
  const std::vector<double> grid = make_grid(f.vmax, f.step);
  doc.results = to_json(fit_constants(metric, grid));
  doc.results["grid_points"] = grid.size();
  return doc;
}

SimConfig sim_config(const Flags& f) {
  SimConfig cfg;
  cfg.sigma_real = f.sigma_real;
  cfg.sigma_mark = f.sigma_mark;
  cfg.map_shift = parse_shift(f.shift);
  cfg.n = f.n;
  cfg.seed = f.seed;
  if (f.layout == "grid") {
    cfg.layout = GroundTruthLayout::kGrid;
  } else if (f.layout == "origin") {
    cfg.layout = GroundTruthLayout::kOrigin;
  } else {
    throw ParseError("unknown layout '" + f.layout + "' (expected grid or origin)");
  }
  cfg.validate();
  return cfg;
}

json sim_inputs(const SimConfig& cfg, const std::string& layout) {
  return {{"sigma_real", cfg.sigma_real},
          {"sigma_mark", cfg.sigma_mark},
          {"shift", {cfg.map_shift.x, cfg.map_shift.y}},
          {"n", cfg.n},
          {"seed", cfg.seed},
          {"layout", layout}};
}

ReportDocument cmd_simulate(const Flags& f) {
  ReportDocument doc{"simulate"};
  const SimConfig cfg = sim_config(f);
  doc.inputs = sim_inputs(cfg, f.layout);
  doc.inputs["output"] = f.output;
  if (f.output.empty()) throw ParseError("simulate: --output PATH is required");
  const Dataset d = gen_dataset(cfg, 0);
  std::ofstream out(f.output);
  if (!out) throw ParseError("cannot write '" + f.output + "'");
  write_dataset_csv(out, d);
  if (!out) throw ParseError("failed writing '" + f.output + "'");
  doc.results["records"] = d.size();
  doc.results["validation"] = to_json(summary_stats(norms_of(d, "validation")));
  doc.results["real"] = to_json(summary_stats(norms_of(d, "real")));
  doc.results["marking"] = to_json(summary_stats(norms_of(d, "marking")));
  return doc;
}

ReportDocument cmd_experiment_marking(const Flags& f) {
  ReportDocument doc{"experiment marking"};
  const SimConfig cfg = sim_config(f);
  doc.inputs = sim_inputs(cfg, f.layout);
  doc.results = to_json(run_marking_experiment(cfg, 0), marking_experiment_metrics());
  return doc;
}

ReportDocument cmd_experiment_map(const Flags& f) {
  ReportDocument doc{"experiment map"};
  const SimConfig cfg = sim_config(f);
  const std::vector<double> shifts = parse_list(f.shifts);
  doc.inputs = sim_inputs(cfg, f.layout);
  doc.inputs["shifts"] = shifts;
  doc.inputs["include_marking"] = f.include_marking;
  doc.inputs["eps"] = f.eps;
  MapExperimentOptions options{f.include_marking, CorrectionConfig(f.eps), 0};
  if (f.include_marking) {
    doc.warnings.push_back("marking error included; the map correction holds only approximately");
  }
  json entries = json::array();
  json summary = json::array();
  for (const MapSweepEntry& e : run_map_experiment(cfg, shifts, options)) {
    entries.push_back(to_json(e));
    for (const Metric& m : map_experiment_metrics()) {
      json row{{"shift", e.shift}, {"metric", m.label()},
               {"validation", e.report.validation.stat(m)},
               {"experimental_real", e.report.experimental_real.stat(m)}};
      if (e.report.relative_gaps.count(m)) {
        row["theoretical_real"] = e.report.theoretical_real.stat(m);
        row["relative_gap"] = e.report.relative_gaps.at(m);
        row["validation_gap"] = e.report.validation_gaps.at(m);
      }
      summary.push_back(row);
    }
    for (const std::string& w : e.infeasible) {
      doc.warnings.push_back("shift " + std::to_string(e.shift) + ": " + w);
    }
  }
  doc.results["entries"] = entries;
  doc.results["summary"] = summary;
  return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Ground-truth error correction for localization accuracy statistics", "gtcorr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", f.pretty, "Aligned text instead of JSON");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", f.input, "Dataset CSV")->required();
  };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", f.kind, "validation | real | marking")->capture_default_str();
  };
  auto add_metric = [&](CLI::App* sub) {
    sub->add_option("--metric", f.metric, "mean | median | tail95 | pNN")->capture_default_str();
  };
  auto add_eps = [&](CLI::App* sub) {
    sub->add_option("--eps", f.eps, "Bisection width for sigma (m)")->capture_default_str();
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--sigma-real", f.sigma_real, "Per-axis std of the real error (m)")
        ->capture_default_str();
    sub->add_option("--sigma-mark", f.sigma_mark, "Per-axis std of the marking error (m)")
        ->capture_default_str();
    sub->add_option("--n", f.n, "Records")->capture_default_str();
    sub->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    sub->add_option("--layout", f.layout, "grid | origin")->capture_default_str();
  };

  auto* stats = app.add_subcommand("stats", "Summary statistics of error norms");
  add_input(stats);
  stats->add_option("--metric", f.metrics, "Metrics (repeatable); default mean,p25,p50,p75,p95");

  auto* fit = app.add_subcommand("fit", "Fit an error-norm distribution");
  add_input(fit);
  add_kind(fit);
  fit->add_option("--dist", f.dist, "rayleigh | rice | normal")->capture_default_str();
  fit->add_flag("--norm-only", f.norm_only, "Fit Rice from norms instead of 2D vectors");

  auto* qq = app.add_subcommand("qq", "Q-Q points against a fitted distribution");
  add_input(qq);
  add_kind(qq);
  qq->add_option("--dist", f.dist, "rayleigh | rice | exponential")->capture_default_str();
  qq->add_option("--output", f.output, "Write (theoretical, empirical) CSV here");

  auto* ecdf = app.add_subcommand("ecdf", "Empirical CDF points of error norms");
  add_input(ecdf);
  add_kind(ecdf);
  ecdf->add_option("--output", f.output, "Write (x, F) CSV here");

  auto* correct = app.add_subcommand("correct", "Correct a validation statistic");
  correct->require_subcommand(1);
  correct->fallthrough();
  auto* marking = correct->add_subcommand("marking", "Remove marking error");
  auto* map = correct->add_subcommand("map", "Remove map translation error");
  auto* pipeline = correct->add_subcommand("pipeline", "Remove map then marking error");
  for (auto* sub : {marking, map}) {
    sub->add_option("--val", f.val, "Validation statistic (m)")->required();
    sub->add_option("--gt", f.gt, "Ground-truth error statistic (m)")->required();
    add_metric(sub);
  }
  add_eps(map);
  pipeline->add_option("--val", f.val, "Validation statistic (m)")->required();
  pipeline->add_option("--map-gt", f.map_gt, "Map offset norm (m)")->required();
  pipeline->add_option("--mark-gt", f.mark_gt, "Marking error statistic (m)")->required();
  add_metric(pipeline);
  add_eps(pipeline);

  auto* compare = app.add_subcommand("compare", "Marking vs map impact at equal size");
  compare->add_option("--val", f.val, "Validation statistic (m)")->required();
  compare->add_option("--gt", f.gt, "Ground-truth error size (m)")->required();
  add_metric(compare);
  add_eps(compare);

  auto* fit_constants_cmd = app.add_subcommand("fit-constants", "Fit alpha, beta for a metric");
  add_metric(fit_constants_cmd);
  fit_constants_cmd->add_option("--vmax", f.vmax, "Grid end")->capture_default_str();
  fit_constants_cmd->add_option("--step", f.step, "Grid step")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset CSV");
  add_sim(simulate);
  simulate->add_option("--shift", f.shift, "Map shift R or R,R (m)")->capture_default_str();
  simulate->add_option("--output", f.output, "Dataset CSV to write")->required();

  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo validation experiments");
  experiment->require_subcommand(1);
  experiment->fallthrough();
  auto* exp_marking = experiment->add_subcommand("marking", "Marking correction vs truth");
  add_sim(exp_marking);
  auto* exp_map = experiment->add_subcommand("map", "Map-shift sweep");
  add_sim(exp_map);
  add_eps(exp_map);
  exp_map->add_option("--shifts", f.shifts, "Comma-separated shifts per axis (m)")
      ->capture_default_str();
  exp_map->add_flag("--include-marking", f.include_marking,
                    "Allow --sigma-mark > 0 (theory then approximate)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    ReportDocument doc;
    if (stats->parsed()) {
      doc = cmd_stats(f);
    } else if (fit->parsed()) {
      doc = cmd_fit(f);
    } else if (qq->parsed()) {
      doc = cmd_qq(f);
    } else if (ecdf->parsed()) {
      doc = cmd_ecdf(f);
    } else if (marking->parsed()) {
      doc = cmd_correct_marking(f);
    } else if (map->parsed()) {
      doc = cmd_correct_map(f);
    } else if (pipeline->parsed()) {
      doc = cmd_pipeline(f);
    } else if (compare->parsed()) {
      doc = cmd_compare(f);
    } else if (fit_constants_cmd->parsed()) {
      doc = cmd_fit_constants(f);
    } else if (simulate->parsed()) {
      doc = cmd_simulate(f);
    } else if (exp_marking->parsed()) {
      doc = cmd_experiment_marking(f);
    } else if (exp_map->parsed()) {
      doc = cmd_experiment_map(f);
    } else {
      err << app.help();
      return kExitUsage;
    }
    for (const std::string& w : doc.warnings) err << "warning: " << w << '\n';
    if (f.pretty) {
      out << render_pretty(doc);
    } else {
      out << doc.to_json().dump() << '\n';
    }
    return kExitOk;
  } catch (const InfeasibleCorrection& e) {
    err << "infeasible correction (" << e.stage() << "): " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const FitError& e) {
    err << "fit failed: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gtcorr::cli
