#include "core/ghsim.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/global_test.hpp"
#include "core/parallel.hpp"
#include "core/pointwise.hpp"
#include "core/rng.hpp"
#include "core/smoother.hpp"

namespace rancova {

namespace {

constexpr int kMaxConsecutiveRedraws = 50;
constexpr double kMaxFailureFraction = 0.20;

bool is_redrawable(const anc_error& e) {
  switch (e.code()) {
    case errc::not_comparable:
    case errc::insufficient_data:
    case errc::degenerate_cloud:
    case errc::resample_exhausted:
      return true;
    default:
      return false;
  }
}

}  // namespace

void GhParams::validate() const {
  if (!(g >= 0.0) || !(h >= 0.0) || !std::isfinite(g) || !std::isfinite(h)) {
    fail(errc::invalid_argument, "gh", "g and h must be nonnegative and finite");
  }
}

double gh_transform(double z, const GhParams& params) {
  const double tail = std::exp(params.h * z * z / 2.0);
  if (params.g > 0.0) {
    return std::expm1(params.g * z) / params.g * tail;
  }
  return z * tail;
}

std::vector<double> gh_sample(std::size_t n, const GhParams& params, Rng& rng) {
  params.validate();
  std::vector<double> values(n);
  for (double& v : values) v = gh_transform(rng.next_normal(), params);
  return values;
}

double Association::mean_at(double x) const {
  if (power == 0) return offset;
  return slope * std::pow(x, power) + offset;
}

void Association::validate() const {
  if (power < 0) fail(errc::invalid_argument, "scenario", "power must be nonnegative");
  if (!std::isfinite(slope) || !std::isfinite(offset)) {
    fail(errc::invalid_argument, "scenario", "slope and offset must be finite");
  }
}

void ScenarioSpec::validate() const {
  if (n1 < 1 || n2 < 1) fail(errc::invalid_argument, "scenario", "sample sizes must be positive");
  error.validate();
  group1.validate();
  group2.validate();
}

std::pair<PairedSample, PairedSample> generate_scenario(const ScenarioSpec& scenario,
                                                        Rng& rng) {
  scenario.validate();
  auto draw_group = [&](int n, const Association& shape) {
    PairedSample sample;
    const auto count = static_cast<std::size_t>(n);
    sample.x.resize(count);
    sample.y.resize(count);
    for (auto& v : sample.x) v = rng.next_normal();
    for (std::size_t i = 0; i < count; ++i) {
      const double eps = gh_transform(rng.next_normal(), scenario.error);
      sample.y[i] = shape.mean_at(sample.x[i]) + eps;
    }
    return sample;
  };
  PairedSample g1 = draw_group(scenario.n1, scenario.group1);
  PairedSample g2 = draw_group(scenario.n2, scenario.group2);
  return {std::move(g1), std::move(g2)};
}

void SimulationSpec::validate() const {
  scenario.validate();
  estimator.validate();
  smoother.validate();
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    fail(errc::invalid_argument, "simulation", "alpha must lie in (0,1)");
  }
  if (replications < 1) {
    fail(errc::invalid_argument, "simulation", "replications must be positive");
  }
  if (num_boot < 2) fail(errc::invalid_argument, "simulation", "B must be at least 2");
  if (method == TestMethod::global && !critical_p && num_crit < 2) {
    fail(errc::invalid_argument, "simulation", "A must be at least 2");
  }
}

SimResult run_study(const SimulationSpec& spec) {
  spec.validate();

  double critical_p = std::numeric_limits<double>::quiet_NaN();
  if (spec.method == TestMethod::global) {
    critical_p = spec.critical_p
                     ? *spec.critical_p
                     : calibrate_critical_p(
                           spec.scenario.n1, spec.scenario.n2, spec.alpha, spec.num_crit,
                           spec.num_boot, spec.estimator, spec.smoother,
                           derive_seed(spec.seed, rng_stream::simulation_calibration, 0),
                           spec.threads);
  }

  const auto reps = static_cast<std::size_t>(spec.replications);
  std::vector<char> rejected(reps, 0);
  std::atomic<long> failures{0};

  parallel_for(reps, spec.threads, [&](std::size_t r) {
    const std::uint64_t rep_seed = derive_seed(spec.seed, rng_stream::simulation, r);
    Rng rng(derive_seed(rep_seed, rng_stream::scenario, 0));

    for (int attempt = 0; attempt < kMaxConsecutiveRedraws; ++attempt) {
      const auto [g1, g2] = generate_scenario(spec.scenario, rng);
      const std::uint64_t test_seed =
          derive_seed(rep_seed, rng_stream::simulation_test,
                      static_cast<std::uint64_t>(attempt));
      try {
        if (spec.method == TestMethod::global) {
          GlobalOptions options;
          options.estimator = spec.estimator;
          options.smoother = spec.smoother;
          options.alpha = spec.alpha;
          options.num_boot = spec.num_boot;
          options.num_crit = spec.num_crit;
          options.seed = test_seed;
          options.threads = 1;
          options.critical_p = critical_p;
          rejected[r] = anc_glob(g1, g2, options).reject ? 1 : 0;
        } else {
          const DesignSelection selection = select_design_points(g1, g2, spec.smoother);
          MethodWResult w;
          if (spec.estimator.kind == EstimatorSpec::Kind::trimmed_mean) {
            w = anc_w_trimmed(g1, g2, selection.points, spec.estimator.param,
                              spec.alpha, spec.smoother);
          } else {
            w = anc_w_quantile(g1, g2, selection.points, spec.estimator.param,
                               spec.alpha, spec.smoother, spec.num_boot, test_seed, 1);
          }
          bool any = false;
          for (const auto& pt : w.points) any = any || pt.reject_adjusted;
          rejected[r] = any ? 1 : 0;
        }
        return;
      } catch (const anc_error& e) {
        if (!is_redrawable(e)) throw;
        failures.fetch_add(1, std::memory_order_relaxed);
      }
    }
    fail(errc::resample_exhausted, "simulation",
         "a replication failed " + std::to_string(kMaxConsecutiveRedraws) +
             " consecutive dataset draws");
  });

  SimResult result;
  result.replications = spec.replications;
  result.failures = failures.load();
  result.critical_p_used = critical_p;

  const double attempts =
      static_cast<double>(result.failures) + static_cast<double>(spec.replications);
  if (static_cast<double>(result.failures) > kMaxFailureFraction * attempts) {
    fail(errc::resample_exhausted, "simulation",
         "more than 20% of attempted datasets failed comparability (" +
             std::to_string(result.failures) + " of " +
             std::to_string(static_cast<long>(attempts)) + ")");
  }

  long count = 0;
  for (char c : rejected) count += c;
  result.rejection_rate = static_cast<double>(count) / static_cast<double>(reps);
  result.standard_error = std::sqrt(result.rejection_rate *
                                    (1.0 - result.rejection_rate) /
                                    static_cast<double>(reps));
  return result;
}

SimResult run_type1_study(SimulationSpec spec, const Association& shape) {
  spec.scenario.group1 = shape;
  spec.scenario.group2 = shape;
  return run_study(spec);
}

SimResult run_power_study(SimulationSpec spec, const Association& group1,
                          const Association& group2) {
  spec.scenario.group1 = group1;
  spec.scenario.group2 = group2;
  return run_study(spec);
}

}  // namespace rancova
