#include "rancova/rancova.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "core/errors.hpp"
#include "core/ghsim.hpp"
#include "core/global_test.hpp"
#include "core/pointwise.hpp"
#include "core/robust.hpp"
#include "core/smoother.hpp"
#include "core/types.hpp"
#include "core/version.hpp"

using rancova::anc_error;
using rancova::errc;

struct anc_sample {
  rancova::PairedSample data;
};

struct anc_global_result {
  rancova::GlobalTestResult result;
};

struct anc_w_result {
  rancova::MethodWResult result;
};

namespace {

thread_local std::string g_last_error;

anc_status to_status(errc code) {
  switch (code) {
    case errc::invalid_argument: return ANC_ERR_INVALID_ARGUMENT;
    case errc::insufficient_data: return ANC_ERR_INSUFFICIENT_DATA;
    case errc::not_comparable: return ANC_ERR_NOT_COMPARABLE;
    case errc::degenerate_cloud: return ANC_ERR_DEGENERATE;
    case errc::resample_exhausted: return ANC_ERR_RESAMPLE_EXHAUSTED;
    case errc::io: return ANC_ERR_IO;
    case errc::internal: return ANC_ERR_INTERNAL;
  }
  return ANC_ERR_INTERNAL;
}

template <typename Fn>
anc_status guarded(Fn&& fn) {
  try {
    fn();
    return ANC_OK;
  } catch (const anc_error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ANC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ANC_ERR_INTERNAL;
  }
}

anc_status invalid(const char* message) {
  g_last_error = message;
  return ANC_ERR_INVALID_ARGUMENT;
}

rancova::EstimatorSpec convert(const anc_estimator& estimator) {
  rancova::EstimatorSpec spec;
  spec.kind = estimator.kind == ANC_ESTIMATOR_TRIMMED_MEAN
                  ? rancova::EstimatorSpec::Kind::trimmed_mean
                  : rancova::EstimatorSpec::Kind::hd_quantile;
  spec.param = estimator.param;
  return spec;
}

rancova::SmootherConfig convert(const anc_smoother_config& config) {
  rancova::SmootherConfig cfg;
  cfg.span = config.span;
  cfg.min_neighbors = config.min_neighbors;
  cfg.num_points = config.num_points;
  cfg.quartile_points = config.quartile_points != 0;
  cfg.paired_bootstrap = config.paired_bootstrap != 0;
  cfg.freeze_madn = config.freeze_madn != 0;
  cfg.comparability_warn_only = config.warn_incomparable != 0;
  return cfg;
}

rancova::Association convert(const anc_association& assoc) {
  return {assoc.slope, assoc.power, assoc.offset};
}

}  // namespace

extern "C" {

const char* anc_version(void) { return rancova::kVersion; }

const char* anc_status_name(anc_status status) {
  switch (status) {
    case ANC_OK: return "ok";
    case ANC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case ANC_ERR_INSUFFICIENT_DATA: return "insufficient-data";
    case ANC_ERR_NOT_COMPARABLE: return "not-comparable";
    case ANC_ERR_DEGENERATE: return "degenerate";
    case ANC_ERR_RESAMPLE_EXHAUSTED: return "resample-exhausted";
    case ANC_ERR_IO: return "io";
    case ANC_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

const char* anc_last_error(void) { return g_last_error.c_str(); }

void anc_estimator_init(anc_estimator* estimator) {
  if (!estimator) return;
  estimator->kind = ANC_ESTIMATOR_TRIMMED_MEAN;
  estimator->param = 0.2;
}

void anc_smoother_config_init(anc_smoother_config* config) {
  if (!config) return;
  config->span = 1.0;
  config->min_neighbors = 12;
  config->num_points = 5;
  config->quartile_points = 0;
  config->paired_bootstrap = 0;
  config->freeze_madn = 0;
  config->warn_incomparable = 0;
}

anc_status anc_sample_create(const double* x, const double* y, size_t n,
                             anc_sample** out) {
  if (!x || !y || !out) return invalid("null pointer argument");
  return guarded([&] {
    auto sample = std::make_unique<anc_sample>();
    sample->data.x.assign(x, x + n);
    sample->data.y.assign(y, y + n);
    sample->data.validate();
    *out = sample.release();
  });
}

void anc_sample_free(anc_sample* sample) { delete sample; }

size_t anc_sample_size(const anc_sample* sample) {
  return sample ? sample->data.size() : 0;
}

anc_status anc_sample_get(const anc_sample* sample, double* x, double* y) {
  if (!sample || !x || !y) return invalid("null pointer argument");
  std::copy(sample->data.x.begin(), sample->data.x.end(), x);
  std::copy(sample->data.y.begin(), sample->data.y.end(), y);
  return ANC_OK;
}

anc_status anc_sample_drop_x_outliers(const anc_sample* sample, anc_sample** out,
                                      size_t* removed) {
  if (!sample || !out) return invalid("null pointer argument");
  return guarded([&] {
    const auto outliers = rancova::boxplot_outlier_indices(sample->data.x);
    auto filtered = std::make_unique<anc_sample>();
    std::size_t next_outlier = 0;
    for (std::size_t i = 0; i < sample->data.size(); ++i) {
      if (next_outlier < outliers.size() && outliers[next_outlier] == i) {
        ++next_outlier;
        continue;
      }
      filtered->data.x.push_back(sample->data.x[i]);
      filtered->data.y.push_back(sample->data.y[i]);
    }
    if (removed) *removed = outliers.size();
    filtered->data.validate();
    *out = filtered.release();
  });
}

anc_status anc_trimmed_mean(const double* z, size_t n, double gamma, double* out) {
  if (!z || !out) return invalid("null pointer argument");
  return guarded([&] { *out = rancova::trimmed_mean({z, n}, gamma); });
}

anc_status anc_winsorized_variance(const double* z, size_t n, double gamma, double* out) {
  if (!z || !out) return invalid("null pointer argument");
  return guarded([&] { *out = rancova::winsorized_variance({z, n}, gamma); });
}

anc_status anc_harrell_davis(const double* z, size_t n, double q, double* out) {
  if (!z || !out) return invalid("null pointer argument");
  return guarded([&] { *out = rancova::harrell_davis({z, n}, q); });
}

anc_status anc_madn(const double* z, size_t n, double* out) {
  if (!z || !out) return invalid("null pointer argument");
  return guarded([&] { *out = rancova::madn({z, n}); });
}

anc_status anc_design_points(const anc_sample* group1, const anc_sample* group2,
                             const anc_smoother_config* config, double* values,
                             long* n1, long* n2, int* count) {
  if (!group1 || !group2 || !config || !values || !count) {
    return invalid("null pointer argument");
  }
  return guarded([&] {
    const auto cfg = convert(*config);
    const auto selection =
        rancova::select_design_points(group1->data, group2->data, cfg);
    const int p = static_cast<int>(selection.points.size());
    if (*count < p) {
      rancova::fail(errc::invalid_argument, "design-points",
                    "output buffer too small");
    }
    const double madn1 = rancova::madn(group1->data.x);
    const double madn2 = rancova::madn(group2->data.x);
    for (int k = 0; k < p; ++k) {
      values[k] = selection.points.values[static_cast<std::size_t>(k)];
      if (n1) {
        n1[k] = static_cast<long>(rancova::neighborhood_count(
            group1->data.x, values[k], cfg.span, madn1));
      }
      if (n2) {
        n2[k] = static_cast<long>(rancova::neighborhood_count(
            group2->data.x, values[k], cfg.span, madn2));
      }
    }
    *count = p;
  });
}

anc_status anc_smoother_curve(const anc_sample* sample, const anc_estimator* estimator,
                              const anc_smoother_config* config, const double* grid,
                              size_t grid_len, double* fit) {
  if (!sample || !estimator || !config || !grid || !fit) {
    return invalid("null pointer argument");
  }
  return guarded([&] {
    const auto fits = rancova::smoother_curve(sample->data, {grid, grid_len},
                                              convert(*estimator), convert(*config));
    for (size_t i = 0; i < grid_len; ++i) {
      fit[i] = fits[i] ? *fits[i] : std::numeric_limits<double>::quiet_NaN();
    }
  });
}

void anc_global_options_init(anc_global_options* options) {
  if (!options) return;
  anc_estimator_init(&options->estimator);
  anc_smoother_config_init(&options->smoother);
  options->alpha = 0.05;
  options->num_boot = 500;
  options->num_crit = 1000;
  options->seed = 0;
  options->threads = 1;
  options->critical_p = std::numeric_limits<double>::quiet_NaN();
}

anc_status anc_global_test(const anc_sample* group1, const anc_sample* group2,
                           const anc_global_options* options, anc_global_result** out) {
  if (!group1 || !group2 || !options || !out) return invalid("null pointer argument");
  return guarded([&] {
    rancova::GlobalOptions opts;
    opts.estimator = convert(options->estimator);
    opts.smoother = convert(options->smoother);
    opts.alpha = options->alpha;
    opts.num_boot = options->num_boot;
    opts.num_crit = options->num_crit;
    opts.seed = options->seed;
    opts.threads = options->threads;
    if (!std::isnan(options->critical_p)) opts.critical_p = options->critical_p;
    auto result = std::make_unique<anc_global_result>();
    result->result = rancova::anc_glob(group1->data, group2->data, opts);
    *out = result.release();
  });
}

void anc_global_result_free(anc_global_result* result) { delete result; }

double anc_global_result_p_value(const anc_global_result* result) {
  return result->result.p_value;
}

double anc_global_result_critical_p(const anc_global_result* result) {
  return result->result.critical_p;
}

int anc_global_result_reject(const anc_global_result* result) {
  return result->result.reject ? 1 : 0;
}

int anc_global_result_calibrated(const anc_global_result* result) {
  return result->result.calibrated ? 1 : 0;
}

int anc_global_result_num_points(const anc_global_result* result) {
  return static_cast<int>(result->result.points.size());
}

anc_status anc_global_result_point(const anc_global_result* result, int k,
                                   anc_point_record* record) {
  if (!result || !record) return invalid("null pointer argument");
  const auto& r = result->result;
  if (k < 0 || static_cast<std::size_t>(k) >= r.points.size()) {
    return invalid("design point index out of range");
  }
  const auto i = static_cast<std::size_t>(k);
  record->x = r.points.values[i];
  record->n1 = static_cast<long>(r.delta.count1[i]);
  record->n2 = static_cast<long>(r.delta.count2[i]);
  record->estimate1 = r.delta.estimate1[i];
  record->estimate2 = r.delta.estimate2[i];
  record->delta = r.delta.deltas[i];
  return ANC_OK;
}

int anc_global_result_region_rank_threshold(const anc_global_result* result) {
  return result->result.region.rank_threshold;
}

int anc_global_result_null_in_region(const anc_global_result* result) {
  return result->result.region.null_in_region ? 1 : 0;
}

double anc_global_result_null_distance(const anc_global_result* result) {
  return result->result.cloud.null_distance;
}

long anc_global_result_num_boot(const anc_global_result* result) {
  return static_cast<long>(result->result.cloud.num_boot);
}

anc_status anc_global_result_distances(const anc_global_result* result, double* out) {
  if (!result || !out) return invalid("null pointer argument");
  const auto& d = result->result.cloud.distances;
  std::copy(d.begin(), d.end(), out);
  return ANC_OK;
}

anc_status anc_global_result_retained(const anc_global_result* result, size_t* out,
                                      size_t* count) {
  if (!result || !out || !count) return invalid("null pointer argument");
  const auto& retained = result->result.region.retained;
  if (*count < retained.size()) return invalid("output buffer too small");
  std::copy(retained.begin(), retained.end(), out);
  *count = retained.size();
  return ANC_OK;
}

long anc_global_result_bootstrap_redraws(const anc_global_result* result) {
  return result->result.cloud.redraws;
}

int anc_global_result_num_warnings(const anc_global_result* result) {
  return static_cast<int>(result->result.warnings.size());
}

const char* anc_global_result_warning(const anc_global_result* result, int i) {
  const auto& warnings = result->result.warnings;
  if (i < 0 || static_cast<std::size_t>(i) >= warnings.size()) return "";
  return warnings[static_cast<std::size_t>(i)].c_str();
}

void anc_w_options_init(anc_w_options* options) {
  if (!options) return;
  anc_estimator_init(&options->estimator);
  anc_smoother_config_init(&options->smoother);
  options->alpha = 0.05;
  options->num_boot = 500;
  options->seed = 0;
  options->threads = 1;
}

anc_status anc_w_test(const anc_sample* group1, const anc_sample* group2,
                      const anc_w_options* options, anc_w_result** out) {
  if (!group1 || !group2 || !options || !out) return invalid("null pointer argument");
  return guarded([&] {
    const auto estimator = convert(options->estimator);
    const auto cfg = convert(options->smoother);
    const auto selection =
        rancova::select_design_points(group1->data, group2->data, cfg);
    auto result = std::make_unique<anc_w_result>();
    if (estimator.kind == rancova::EstimatorSpec::Kind::trimmed_mean) {
      result->result =
          rancova::anc_w_trimmed(group1->data, group2->data, selection.points,
                                 estimator.param, options->alpha, cfg);
    } else {
      result->result = rancova::anc_w_quantile(
          group1->data, group2->data, selection.points, estimator.param,
          options->alpha, cfg, options->num_boot, options->seed, options->threads);
    }
    for (const auto& warning : selection.warnings) {
      result->result.warnings.insert(result->result.warnings.begin(), warning);
    }
    *out = result.release();
  });
}

void anc_w_result_free(anc_w_result* result) { delete result; }

const char* anc_w_result_method(const anc_w_result* result) {
  static thread_local std::string name;
  name = result->result.method_name();
  return name.c_str();
}

int anc_w_result_num_points(const anc_w_result* result) {
  return static_cast<int>(result->result.points.size());
}

anc_status anc_w_result_point(const anc_w_result* result, int k, anc_w_point* point) {
  if (!result || !point) return invalid("null pointer argument");
  const auto& points = result->result.points;
  if (k < 0 || static_cast<std::size_t>(k) >= points.size()) {
    return invalid("design point index out of range");
  }
  const auto& p = points[static_cast<std::size_t>(k)];
  point->x = p.x;
  point->n1 = static_cast<long>(p.n1);
  point->n2 = static_cast<long>(p.n2);
  point->estimate1 = p.estimate1;
  point->estimate2 = p.estimate2;
  point->delta = p.delta;
  point->p_value = p.p_value;
  point->ci_low = p.ci_low;
  point->ci_high = p.ci_high;
  point->reject_adjusted = p.reject_adjusted ? 1 : 0;
  return ANC_OK;
}

int anc_w_result_any_reject(const anc_w_result* result) {
  for (const auto& p : result->result.points) {
    if (p.reject_adjusted) return 1;
  }
  return 0;
}

int anc_w_result_num_warnings(const anc_w_result* result) {
  return static_cast<int>(result->result.warnings.size());
}

const char* anc_w_result_warning(const anc_w_result* result, int i) {
  const auto& warnings = result->result.warnings;
  if (i < 0 || static_cast<std::size_t>(i) >= warnings.size()) return "";
  return warnings[static_cast<std::size_t>(i)].c_str();
}

anc_status anc_calibrate_critical_p(int n1, int n2, double alpha, int num_crit,
                                    int num_boot, const anc_estimator* estimator,
                                    const anc_smoother_config* smoother, uint64_t seed,
                                    int threads, double* critical_p, long* redraws) {
  if (!estimator || !smoother || !critical_p) return invalid("null pointer argument");
  return guarded([&] {
    *critical_p = rancova::calibrate_critical_p(n1, n2, alpha, num_crit, num_boot,
                                                convert(*estimator), convert(*smoother),
                                                seed, threads, redraws);
  });
}

void anc_sim_spec_init(anc_sim_spec* spec) {
  if (!spec) return;
  spec->n1 = 30;
  spec->n2 = 30;
  spec->gh_g = 0.0;
  spec->gh_h = 0.0;
  spec->group1 = {0.0, 1, 0.0};
  spec->group2 = {0.0, 1, 0.0};
  spec->method = ANC_METHOD_GLOBAL;
  anc_estimator_init(&spec->estimator);
  anc_smoother_config_init(&spec->smoother);
  spec->alpha = 0.05;
  spec->num_boot = 500;
  spec->num_crit = 1000;
  spec->replications = 1000;
  spec->seed = 0;
  spec->threads = 1;
  spec->critical_p = std::numeric_limits<double>::quiet_NaN();
}

anc_status anc_run_simulation(const anc_sim_spec* spec, anc_sim_result* result) {
  if (!spec || !result) return invalid("null pointer argument");
  return guarded([&] {
    rancova::SimulationSpec sim;
    sim.scenario.n1 = spec->n1;
    sim.scenario.n2 = spec->n2;
    sim.scenario.error = {spec->gh_g, spec->gh_h};
    sim.scenario.group1 = convert(spec->group1);
    sim.scenario.group2 = convert(spec->group2);
    sim.method = spec->method == ANC_METHOD_GLOBAL ? rancova::TestMethod::global
                                                   : rancova::TestMethod::pointwise;
    sim.estimator = convert(spec->estimator);
    sim.smoother = convert(spec->smoother);
    sim.alpha = spec->alpha;
    sim.num_boot = spec->num_boot;
    sim.num_crit = spec->num_crit;
    sim.replications = spec->replications;
    sim.seed = spec->seed;
    sim.threads = spec->threads;
    if (!std::isnan(spec->critical_p)) sim.critical_p = spec->critical_p;

    const rancova::SimResult sr = rancova::run_study(sim);
    result->rejection_rate = sr.rejection_rate;
    result->replications = sr.replications;
    result->failures = sr.failures;
    result->standard_error = sr.standard_error;
    result->critical_p = sr.critical_p_used;
  });
}

}  // extern "C"
