// anc: robust ANCOVA for two independent groups from the command line.
//
// Subcommands: ancglob (global bootstrap test), ancw (pointwise tests),
// calibrate (critical p-value), simulate (Type I error / power studies),
// plot (smoother curves as SVG). Reports are JSON; every randomized command
// either takes --seed or records the generated seed in its report.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "cli_error.hpp"
#include "csv.hpp"
#include "rancova/rancova.h"
#include "svg.hpp"

using nlohmann::json;

namespace anc_cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SampleHandle {
  anc_sample* ptr = nullptr;
  SampleHandle() = default;
  SampleHandle(const SampleHandle&) = delete;
  SampleHandle& operator=(const SampleHandle&) = delete;
  ~SampleHandle() { anc_sample_free(ptr); }
};

struct CommonOptions {
  std::string data1;
  std::string data2;
  std::string estimator_text = "trimmed:0.2";
  double span = 1.0;
  int min_neighbors = 12;
  double alpha = 0.05;
  int nboot = 500;
  int ncrit = 1000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;  // 0: hardware concurrency
  std::string out_path;
  std::string cache_path;
  double critical_p = kNaN;
  bool drop_x_outliers = false;
  bool quartile_points = false;
  bool paired_bootstrap = false;
  bool freeze_madn = false;
  bool warn_incomparable = false;
  bool header = false;
};

anc_estimator parse_estimator(const std::string& text) {
  anc_estimator estimator;
  anc_estimator_init(&estimator);
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "trimmed") {
    estimator.kind = ANC_ESTIMATOR_TRIMMED_MEAN;
    estimator.param = 0.2;
  } else if (kind == "quantile") {
    estimator.kind = ANC_ESTIMATOR_HD_QUANTILE;
    estimator.param = 0.5;
  } else {
    throw CliError(kExitUsage,
                   "unknown estimator '" + text + "' (use trimmed:G or quantile:Q)");
  }
  if (colon != std::string::npos) {
    try {
      estimator.param = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw CliError(kExitUsage, "bad estimator parameter in '" + text + "'");
    }
  }
  return estimator;
}

std::string estimator_label(const anc_estimator& estimator) {
  std::ostringstream out;
  out << (estimator.kind == ANC_ESTIMATOR_TRIMMED_MEAN ? "trimmed:" : "quantile:")
      << estimator.param;
  return out.str();
}

anc_smoother_config make_config(const CommonOptions& opts) {
  anc_smoother_config config;
  anc_smoother_config_init(&config);
  config.span = opts.span;
  config.min_neighbors = opts.min_neighbors;
  config.quartile_points = opts.quartile_points ? 1 : 0;
  config.num_points = opts.quartile_points ? 3 : 5;
  config.paired_bootstrap = opts.paired_bootstrap ? 1 : 0;
  config.freeze_madn = opts.freeze_madn ? 1 : 0;
  config.warn_incomparable = opts.warn_incomparable ? 1 : 0;
  return config;
}

void ensure_seed(CommonOptions& opts) {
  if (opts.seed_given) return;
  std::random_device rd;
  opts.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  opts.seed_given = true;
}

json config_json(const CommonOptions& opts, const anc_estimator& estimator) {
  json config{{"estimator", estimator_label(estimator)},
              {"span", opts.span},
              {"min_neighbors", opts.min_neighbors},
              {"num_points", opts.quartile_points ? 3 : 5},
              {"quartile_points", opts.quartile_points},
              {"bootstrap_scheme",
               opts.paired_bootstrap ? "paired" : "within-neighborhood"},
              {"freeze_madn", opts.freeze_madn},
              {"warn_incomparable", opts.warn_incomparable},
              {"alpha", opts.alpha},
              {"nboot", opts.nboot},
              {"ncrit", opts.ncrit},
              {"threads", opts.threads}};
  if (!opts.data1.empty()) {
    config["data1"] = opts.data1;
    config["data2"] = opts.data2;
    config["drop_x_outliers"] = opts.drop_x_outliers;
    config["header"] = opts.header;
  }
  if (!opts.cache_path.empty()) config["cache"] = opts.cache_path;
  if (!std::isnan(opts.critical_p)) config["critical_p_flag"] = opts.critical_p;
  return config;
}

json base_report(const std::string& command, const CommonOptions& opts,
                 const anc_estimator& estimator) {
  return json{{"tool", {{"name", "anc"}, {"version", anc_version()}}},
              {"command", command},
              {"seed", opts.seed},
              {"config", config_json(opts, estimator)},
              {"warnings", json::array()}};
}

void write_report(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw CliError(kExitData, "cannot write report: " + out_path);
  out << report.dump(2) << "\n";
}

// Reads, cleans, and optionally outlier-filters one group.
void load_sample(const std::string& path, const CommonOptions& opts,
                 const char* group_name, SampleHandle& sample, json& ingestion,
                 json& warnings) {
  const CsvData data = read_xy_csv(path, opts.header);
  check(anc_sample_create(data.x.data(), data.y.data(), data.x.size(), &sample.ptr),
        "loading data");
  json entry{{"rows_read", data.rows_read},
             {"rows_used", static_cast<long>(data.x.size())},
             {"rows_dropped", data.rows_dropped},
             {"outliers_removed", 0}};
  if (data.rows_dropped > 0) {
    warnings.push_back(std::string(group_name) + ": dropped " +
                       std::to_string(data.rows_dropped) +
                       " row(s) with missing or non-numeric cells");
  }
  if (opts.drop_x_outliers) {
    SampleHandle filtered;
    size_t removed = 0;
    check(anc_sample_drop_x_outliers(sample.ptr, &filtered.ptr, &removed),
          "covariate outlier filter");
    std::swap(sample.ptr, filtered.ptr);
    entry["outliers_removed"] = static_cast<long>(removed);
    entry["rows_used"] = static_cast<long>(anc_sample_size(sample.ptr));
    if (removed > 0) {
      warnings.push_back(std::string(group_name) + ": removed " +
                         std::to_string(removed) + " covariate outlier(s)");
    }
  }
  ingestion[group_name] = entry;
}

json calibration_key(const CommonOptions& opts, const anc_estimator& estimator,
                     int n1, int n2) {
  return json{{"n1", n1},
              {"n2", n2},
              {"alpha", opts.alpha},
              {"estimator", estimator_label(estimator)},
              {"span", opts.span},
              {"min_neighbors", opts.min_neighbors},
              {"num_points", opts.quartile_points ? 3 : 5},
              {"bootstrap_scheme",
               opts.paired_bootstrap ? "paired" : "within-neighborhood"},
              {"freeze_madn", opts.freeze_madn},
              {"A", opts.ncrit},
              {"B", opts.nboot},
              {"seed", opts.seed}};
}

// Critical p-value from, in order: the --critical-p flag, a cache hit, or a
// fresh calibration (stored back into the cache when one is configured).
double obtain_critical_p(const CommonOptions& opts, const anc_estimator& estimator,
                         const anc_smoother_config& config, int n1, int n2,
                         json& calibration, json& warnings) {
  if (!std::isnan(opts.critical_p)) {
    calibration = json{{"critical_p", opts.critical_p}, {"source", "flag"}};
    return opts.critical_p;
  }
  const json key = calibration_key(opts, estimator, n1, n2);
  if (!opts.cache_path.empty()) {
    const CalibrationCache cache(opts.cache_path);
    std::string warning;
    const auto hit = cache.lookup(key, &warning);
    if (!warning.empty()) warnings.push_back(warning);
    if (hit) {
      std::cerr << "calibration cache hit (" << opts.cache_path << ")\n";
      calibration = json{{"critical_p", *hit}, {"source", "cache"}, {"key", key}};
      return *hit;
    }
  }
  double critical_p = 0.0;
  long redraws = 0;
  check(anc_calibrate_critical_p(n1, n2, opts.alpha, opts.ncrit, opts.nboot,
                                 &estimator, &config, opts.seed, opts.threads,
                                 &critical_p, &redraws),
        "calibration");
  calibration = json{{"critical_p", critical_p},
                     {"source", "fresh"},
                     {"redraws", redraws},
                     {"A", opts.ncrit},
                     {"B", opts.nboot},
                     {"key", key}};
  if (!opts.cache_path.empty()) {
    CalibrationCache(opts.cache_path).store(key, critical_p);
  }
  return critical_p;
}

int cmd_ancglob(CommonOptions opts) {
  ensure_seed(opts);
  const anc_estimator estimator = parse_estimator(opts.estimator_text);
  const anc_smoother_config config = make_config(opts);

  json report = base_report("ancglob", opts, estimator);
  json ingestion = json::object();
  SampleHandle g1, g2;
  load_sample(opts.data1, opts, "group1", g1, ingestion, report["warnings"]);
  load_sample(opts.data2, opts, "group2", g2, ingestion, report["warnings"]);
  report["ingestion"] = ingestion;

  json calibration;
  const double critical_p = obtain_critical_p(
      opts, estimator, config, static_cast<int>(anc_sample_size(g1.ptr)),
      static_cast<int>(anc_sample_size(g2.ptr)), calibration, report["warnings"]);

  anc_global_options options;
  anc_global_options_init(&options);
  options.estimator = estimator;
  options.smoother = config;
  options.alpha = opts.alpha;
  options.num_boot = opts.nboot;
  options.num_crit = opts.ncrit;
  options.seed = opts.seed;
  options.threads = opts.threads;
  options.critical_p = critical_p;

  anc_global_result* raw = nullptr;
  check(anc_global_test(g1.ptr, g2.ptr, &options, &raw), "global test");
  std::unique_ptr<anc_global_result, decltype(&anc_global_result_free)> result(
      raw, &anc_global_result_free);

  json points = json::array();
  for (int k = 0; k < anc_global_result_num_points(result.get()); ++k) {
    anc_point_record record;
    check(anc_global_result_point(result.get(), k, &record), "result point");
    points.push_back(json{{"x", record.x},
                          {"n1", record.n1},
                          {"n2", record.n2},
                          {"estimate1", record.estimate1},
                          {"estimate2", record.estimate2},
                          {"delta", record.delta}});
  }
  report["design_points"] = points;
  report["global"] =
      json{{"p_value", anc_global_result_p_value(result.get())},
           {"critical_p", anc_global_result_critical_p(result.get())},
           {"reject", anc_global_result_reject(result.get()) != 0},
           {"null_distance", anc_global_result_null_distance(result.get())},
           {"bootstrap",
            {{"B", anc_global_result_num_boot(result.get())},
             {"scheme", opts.paired_bootstrap ? "paired" : "within-neighborhood"},
             {"redraws", anc_global_result_bootstrap_redraws(result.get())}}},
           {"region",
            {{"rank_threshold", anc_global_result_region_rank_threshold(result.get())},
             {"null_in_region",
              anc_global_result_null_in_region(result.get()) != 0}}},
           {"calibration", calibration}};
  for (int i = 0; i < anc_global_result_num_warnings(result.get()); ++i) {
    report["warnings"].push_back(anc_global_result_warning(result.get(), i));
  }

  std::cerr << "global test: p=" << anc_global_result_p_value(result.get())
            << " critical=" << anc_global_result_critical_p(result.get()) << " -> "
            << (anc_global_result_reject(result.get()) ? "reject" : "retain") << "\n";
  write_report(report, opts.out_path);
  return 0;
}

int cmd_ancw(CommonOptions opts) {
  ensure_seed(opts);
  const anc_estimator estimator = parse_estimator(opts.estimator_text);
  const anc_smoother_config config = make_config(opts);

  json report = base_report("ancw", opts, estimator);
  json ingestion = json::object();
  SampleHandle g1, g2;
  load_sample(opts.data1, opts, "group1", g1, ingestion, report["warnings"]);
  load_sample(opts.data2, opts, "group2", g2, ingestion, report["warnings"]);
  report["ingestion"] = ingestion;

  anc_w_options options;
  anc_w_options_init(&options);
  options.estimator = estimator;
  options.smoother = config;
  options.alpha = opts.alpha;
  options.num_boot = opts.nboot;
  options.seed = opts.seed;
  options.threads = opts.threads;

  anc_w_result* raw = nullptr;
  check(anc_w_test(g1.ptr, g2.ptr, &options, &raw), "pointwise test");
  std::unique_ptr<anc_w_result, decltype(&anc_w_result_free)> result(
      raw, &anc_w_result_free);

  json points = json::array();
  for (int k = 0; k < anc_w_result_num_points(result.get()); ++k) {
    anc_w_point point;
    check(anc_w_result_point(result.get(), k, &point), "result point");
    points.push_back(json{{"x", point.x},
                          {"n1", point.n1},
                          {"n2", point.n2},
                          {"estimate1", point.estimate1},
                          {"estimate2", point.estimate2},
                          {"delta", point.delta},
                          {"p_value", point.p_value},
                          {"ci_low", point.ci_low},
                          {"ci_high", point.ci_high},
                          {"reject_adjusted", point.reject_adjusted != 0}});
  }
  report["pointwise"] = json{{"method", anc_w_result_method(result.get())},
                             {"alpha", opts.alpha},
                             {"ci_level", 1.0 - opts.alpha},
                             {"ci_adjusted", false},
                             {"any_reject", anc_w_result_any_reject(result.get()) != 0},
                             {"points", points}};
  for (int i = 0; i < anc_w_result_num_warnings(result.get()); ++i) {
    report["warnings"].push_back(anc_w_result_warning(result.get(), i));
  }

  std::cerr << "pointwise test (" << anc_w_result_method(result.get()) << "): "
            << (anc_w_result_any_reject(result.get()) ? "rejects at >=1 point"
                                                      : "no rejections")
            << "\n";
  write_report(report, opts.out_path);
  return 0;
}

int cmd_calibrate(CommonOptions opts, int n1, int n2) {
  ensure_seed(opts);
  const anc_estimator estimator = parse_estimator(opts.estimator_text);
  const anc_smoother_config config = make_config(opts);

  json report = base_report("calibrate", opts, estimator);
  json calibration;
  const double critical_p =
      obtain_critical_p(opts, estimator, config, n1, n2, calibration, report["warnings"]);
  calibration["n1"] = n1;
  calibration["n2"] = n2;
  report["calibration"] = calibration;

  std::cerr << "critical p-value for n1=" << n1 << " n2=" << n2 << ": " << critical_p
            << " (" << calibration["source"].get<std::string>() << ")\n";
  write_report(report, opts.out_path);
  return 0;
}

struct SimulateOptions {
  std::string method = "global";
  std::string scenario = "S1";
  double gh_g = 0.0;
  double gh_h = 0.0;
  int n1 = 30;
  int n2 = 30;
  long reps = 1000;
  double g2_slope = kNaN;
  int g2_power = -1;
  double g2_offset = kNaN;
};

anc_association scenario_association(const std::string& scenario) {
  if (scenario == "S1") return {0.0, 1, 0.0};
  if (scenario == "S2") return {1.0, 1, 0.0};
  if (scenario == "S3") return {1.0, 2, 0.0};
  throw CliError(kExitUsage, "unknown scenario '" + scenario + "' (use S1, S2, or S3)");
}

int cmd_simulate(CommonOptions opts, SimulateOptions sim) {
  ensure_seed(opts);
  const anc_estimator estimator = parse_estimator(opts.estimator_text);
  const anc_smoother_config config = make_config(opts);

  anc_sim_spec spec;
  anc_sim_spec_init(&spec);
  spec.n1 = sim.n1;
  spec.n2 = sim.n2;
  spec.gh_g = sim.gh_g;
  spec.gh_h = sim.gh_h;
  spec.group1 = scenario_association(sim.scenario);
  spec.group2 = spec.group1;
  const bool has_override = !std::isnan(sim.g2_slope) || sim.g2_power >= 0 ||
                            !std::isnan(sim.g2_offset);
  if (has_override) {
    if (!std::isnan(sim.g2_slope)) spec.group2.slope = sim.g2_slope;
    if (sim.g2_power >= 0) spec.group2.power = sim.g2_power;
    if (!std::isnan(sim.g2_offset)) spec.group2.offset = sim.g2_offset;
  }

  bool is_global = false;
  if (sim.method == "global" || sim.method == "G" || sim.method == "g") {
    is_global = true;
  } else if (!(sim.method == "pointwise" || sim.method == "W" || sim.method == "w")) {
    throw CliError(kExitUsage, "unknown method '" + sim.method + "' (global or pointwise)");
  }
  spec.method = is_global ? ANC_METHOD_GLOBAL : ANC_METHOD_POINTWISE;
  spec.estimator = estimator;
  spec.smoother = config;
  spec.alpha = opts.alpha;
  spec.num_boot = opts.nboot;
  spec.num_crit = opts.ncrit;
  spec.replications = sim.reps;
  spec.seed = opts.seed;
  spec.threads = opts.threads;

  json report = base_report("simulate", opts, estimator);
  json calibration = json{{"source", "none"}};
  if (is_global) {
    spec.critical_p = obtain_critical_p(opts, estimator, config, sim.n1, sim.n2,
                                        calibration, report["warnings"]);
  } else {
    spec.critical_p = kNaN;
  }

  anc_sim_result result;
  check(anc_run_simulation(&spec, &result), "simulation");

  report["simulation"] =
      json{{"method", is_global ? "global" : "pointwise"},
           {"scenario",
            {{"name", sim.scenario},
             {"n1", sim.n1},
             {"n2", sim.n2},
             {"g", sim.gh_g},
             {"h", sim.gh_h},
             {"group1",
              {{"slope", spec.group1.slope},
               {"power", spec.group1.power},
               {"offset", spec.group1.offset}}},
             {"group2",
              {{"slope", spec.group2.slope},
               {"power", spec.group2.power},
               {"offset", spec.group2.offset}}}}},
           {"rejection_rate", result.rejection_rate},
           {"replications", result.replications},
           {"failures", result.failures},
           {"standard_error", result.standard_error},
           {"calibration", calibration}};
  if (!std::isnan(result.critical_p)) {
    report["simulation"]["critical_p"] = result.critical_p;
  }

  std::cerr << "simulate: rejection rate " << result.rejection_rate << " over "
            << result.replications << " replications (SE " << result.standard_error
            << ")\n";
  write_report(report, opts.out_path);
  return 0;
}

int cmd_plot(CommonOptions opts) {
  ensure_seed(opts);
  const anc_estimator estimator = parse_estimator(opts.estimator_text);
  const anc_smoother_config config = make_config(opts);

  json ingestion = json::object();
  json warnings = json::array();
  SampleHandle g1, g2;
  load_sample(opts.data1, opts, "group1", g1, ingestion, warnings);
  load_sample(opts.data2, opts, "group2", g2, ingestion, warnings);

  std::vector<double> values(static_cast<std::size_t>(config.num_points));
  int count = config.num_points;
  check(anc_design_points(g1.ptr, g2.ptr, &config, values.data(), nullptr, nullptr,
                          &count),
        "design points");
  values.resize(static_cast<std::size_t>(count));

  // 201-point grid over the comparable range [x_1, x_p].
  const double lo = values.front();
  const double hi = values.back();
  std::vector<double> grid(201);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / 200.0;
  }

  auto make_series = [&](anc_sample* sample, const char* label, const char* color,
                         bool dashed) {
    CurveSeries series;
    series.label = label;
    series.color = color;
    series.dashed = dashed;
    series.x = grid;
    series.y.resize(grid.size());
    check(anc_smoother_curve(sample, &estimator, &config, grid.data(), grid.size(),
                             series.y.data()),
          "smoother curve");
    std::vector<double> at_points(values.size());
    check(anc_smoother_curve(sample, &estimator, &config, values.data(), values.size(),
                             at_points.data()),
          "smoother curve");
    for (std::size_t k = 0; k < values.size(); ++k) {
      series.markers.emplace_back(values[k], at_points[k]);
    }
    return series;
  };

  const std::vector<CurveSeries> series{
      make_series(g1.ptr, "group 1", "#1f6fb4", false),
      make_series(g2.ptr, "group 2", "#d1492e", true)};

  const std::string svg = render_smoother_svg(series, values, "covariate",
                                              estimator_label(estimator) + " of outcome");
  if (opts.out_path.empty()) {
    std::cout << svg;
  } else {
    std::ofstream out(opts.out_path);
    if (!out) throw CliError(kExitData, "cannot write plot: " + opts.out_path);
    out << svg;
  }
  std::cerr << "plot: " << count << " design points over [" << lo << ", " << hi
            << "]\n";
  return 0;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_data,
                      bool with_boot) {
  if (with_data) {
    cmd->add_option("--data1", opts.data1, "CSV file for group 1 (covariate,outcome)")
        ->required();
    cmd->add_option("--data2", opts.data2, "CSV file for group 2")->required();
    cmd->add_flag("--header", opts.header, "skip the first line of each data file");
    cmd->add_flag("--drop-x-outliers", opts.drop_x_outliers,
                  "remove covariate boxplot outliers before the analysis");
  }
  cmd->add_option("--estimator", opts.estimator_text,
                  "location estimator: trimmed:G or quantile:Q (default trimmed:0.2)");
  cmd->add_option("--span", opts.span, "smoother span in MADN units (default 1.0)");
  cmd->add_option("--min-neighbors", opts.min_neighbors,
                  "comparability floor per group (default 12)");
  cmd->add_option("--alpha", opts.alpha, "test level (default 0.05)");
  cmd->add_flag("--quartile-points", opts.quartile_points,
                "compare at the three quartiles of group 1's covariates");
  cmd->add_flag("--warn-incomparable", opts.warn_incomparable,
                "downgrade design-point comparability failures to warnings");
  if (with_boot) {
    cmd->add_option("--nboot", opts.nboot, "bootstrap resamples B (default 500)");
    cmd->add_option("--ncrit", opts.ncrit, "calibration replications A (default 1000)");
    cmd->add_flag("--paired-bootstrap", opts.paired_bootstrap,
                  "whole-group pair resampling instead of within-neighborhood");
    cmd->add_flag("--freeze-madn", opts.freeze_madn,
                  "paired scheme: keep the original MADN scale in resamples");
  }
  cmd->add_option("--seed", opts.seed, "RNG seed (recorded in the report if omitted)")
      ->each([&opts](const std::string&) { opts.seed_given = true; });
  cmd->add_option("--threads", opts.threads, "worker cap; 0 = hardware (default 0)");
  cmd->add_option("--out", opts.out_path, "output file (default stdout)");
}

int run(int argc, char** argv) {
  CLI::App app{"robust ANCOVA: compare two groups' conditional location without "
               "assuming straight regression lines"};
  // --h is the g-and-h tail parameter of `simulate`, so help has no short form.
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  CommonOptions glob_opts;
  auto* glob = app.add_subcommand("ancglob", "global bootstrap test at the design points");
  add_common_flags(glob, glob_opts, true, true);
  glob->add_option("--cache", glob_opts.cache_path, "calibration cache file");
  glob->add_option("--critical-p", glob_opts.critical_p,
                   "use this critical p-value instead of calibrating");

  CommonOptions w_opts;
  auto* ancw = app.add_subcommand("ancw", "pointwise tests with Hochberg adjustment");
  add_common_flags(ancw, w_opts, true, false);
  ancw->add_option("--nboot", w_opts.nboot,
                   "percentile bootstrap resamples for quantile estimators");

  CommonOptions cal_opts;
  int cal_n1 = 30, cal_n2 = 30;
  auto* calibrate = app.add_subcommand("calibrate", "critical p-value for given sizes");
  add_common_flags(calibrate, cal_opts, false, true);
  calibrate->add_option("--n1", cal_n1, "group 1 sample size")->required();
  calibrate->add_option("--n2", cal_n2, "group 2 sample size")->required();
  calibrate->add_option("--cache", cal_opts.cache_path, "calibration cache file");

  CommonOptions sim_opts;
  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo Type I error / power study");
  add_common_flags(simulate, sim_opts, false, true);
  simulate->add_option("--method", sim.method, "global or pointwise (default global)");
  simulate->add_option("--scenario", sim.scenario,
                       "S1 (y=e), S2 (y=x+e), S3 (y=x^2+e); default S1");
  simulate->add_option("--g", sim.gh_g, "g-and-h skewness parameter (default 0)");
  simulate->add_option("--h", sim.gh_h, "g-and-h tail parameter (default 0)");
  simulate->add_option("--n1", sim.n1, "group 1 size (default 30)");
  simulate->add_option("--n2", sim.n2, "group 2 size (default 30)");
  simulate->add_option("--reps", sim.reps, "replications (default 1000)");
  simulate->add_option("--g2-slope", sim.g2_slope, "group 2 slope override");
  simulate->add_option("--g2-power", sim.g2_power, "group 2 power override (0 = shift)");
  simulate->add_option("--g2-offset", sim.g2_offset, "group 2 offset override");
  simulate->add_option("--cache", sim_opts.cache_path, "calibration cache file");
  simulate->add_option("--critical-p", sim_opts.critical_p,
                       "use this critical p-value instead of calibrating");

  CommonOptions plot_opts;
  auto* plot = app.add_subcommand("plot", "SVG figure of both groups' smoother curves");
  add_common_flags(plot, plot_opts, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (glob->parsed()) return cmd_ancglob(std::move(glob_opts));
    if (ancw->parsed()) return cmd_ancw(std::move(w_opts));
    if (calibrate->parsed()) return cmd_calibrate(std::move(cal_opts), cal_n1, cal_n2);
    if (simulate->parsed()) return cmd_simulate(std::move(sim_opts), sim);
    if (plot->parsed()) return cmd_plot(std::move(plot_opts));
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace anc_cli

int main(int argc, char** argv) { return anc_cli::run(argc, argv); }
