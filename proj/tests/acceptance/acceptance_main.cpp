// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion numbers can be passed as arguments to run a subset.
//
//  1  Type I error, normal errors, 20% trimmed mean (target .048 +- .025)
//  2  Type I error, heavy tails g=h=.2 (target .020 +- .02, strictly < .05)
//  3  Type I error, g=.2 h=0, quantile .25 (target .053 +- .025)
//  4  Power ordering at n=50, shift .5: global ~ .51, pointwise ~ .38, G > W
//  5  Full Type I sweep: every configuration within [.012, .075]; documented
//     under-coverage cells (reference value < .025) only need rate < .05
//  6  Estimator oracles: quadrature and brute-force transcriptions
//  7  Depth-test properties: affine invariance, p-value lattice,
//     decision/region consistency, determinism across 1/2/8 workers
//  8  g-and-h quantile map on 10^6 draws per parameter pair

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/ghsim.hpp"
#include "core/global_test.hpp"
#include "core/pointwise.hpp"
#include "core/rng.hpp"
#include "core/robust.hpp"
#include "core/smoother.hpp"
#include "support/oracles.hpp"

using namespace rancova;

namespace {

constexpr long kCellReps = 1500;       // criteria 1-3
constexpr long kSweepReps = 1200;      // criterion 5 (>= 1000 required)
constexpr long kPowerReps = 500;       // criterion 4
constexpr int kCalibrationA = 1000;
constexpr int kBoot = 500;

struct CriterionResult {
  int id;
  bool pass;
  std::string detail;
};

std::vector<CriterionResult> g_results;

void record(int id, bool pass, const std::string& detail) {
  g_results.push_back({id, pass, detail});
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string fmt_exp(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

// Calibrations shared across criteria, keyed by estimator label and n.
std::map<std::string, double> g_calibrations;

double calibration_for(const EstimatorSpec& spec, int n, std::uint64_t seed) {
  const std::string key = spec.label() + "@" + std::to_string(n);
  const auto it = g_calibrations.find(key);
  if (it != g_calibrations.end()) return it->second;
  SmootherConfig cfg;
  const double pc =
      calibrate_critical_p(n, n, 0.05, kCalibrationA, kBoot, spec, cfg, seed, 0);
  std::fprintf(stderr, "  calibrated %s: critical p = %.4f\n", key.c_str(), pc);
  g_calibrations[key] = pc;
  return pc;
}

double type1_rate(const EstimatorSpec& spec, double g, double h,
                  const Association& shape, long reps, std::uint64_t seed) {
  SimulationSpec sim;
  sim.scenario.n1 = sim.scenario.n2 = 30;
  sim.scenario.error = {g, h};
  sim.estimator = spec;
  sim.num_boot = kBoot;
  sim.replications = reps;
  sim.seed = seed;
  sim.threads = 0;
  sim.critical_p = calibration_for(spec, 30, 40100 + static_cast<std::uint64_t>(
                                                          spec.label().size()));
  return run_type1_study(sim, shape).rejection_rate;
}

void criterion_1() {
  const double rate = type1_rate(EstimatorSpec::trimmed(0.2), 0.0, 0.0,
                                 Association::flat(), kCellReps, 101);
  const bool pass = std::fabs(rate - 0.048) <= 0.025;
  record(1, pass,
         "Type I (normal, trimmed .2) = " + fmt(rate) + ", target .048 +- .025");
}

void criterion_2() {
  const double rate = type1_rate(EstimatorSpec::trimmed(0.2), 0.2, 0.2,
                                 Association::flat(), kCellReps, 102);
  const bool pass = std::fabs(rate - 0.020) <= 0.02 && rate < 0.05;
  record(2, pass,
         "Type I (g=h=.2, trimmed .2) = " + fmt(rate) +
             ", target .020 +- .02 and < .05");
}

void criterion_3() {
  const double rate = type1_rate(EstimatorSpec::quantile(0.25), 0.2, 0.0,
                                 Association::flat(), kCellReps, 103);
  const bool pass = std::fabs(rate - 0.053) <= 0.025;
  record(3, pass,
         "Type I (g=.2 h=0, quantile .25) = " + fmt(rate) + ", target .053 +- .025");
}

void criterion_4() {
  const EstimatorSpec trimmed = EstimatorSpec::trimmed(0.2);
  SimulationSpec sim;
  sim.scenario.n1 = sim.scenario.n2 = 50;
  sim.estimator = trimmed;
  sim.num_boot = kBoot;
  sim.replications = kPowerReps;
  sim.seed = 404;
  sim.threads = 0;
  sim.critical_p = calibration_for(trimmed, 50, 40150);

  const double power_g =
      run_power_study(sim, Association::flat(), Association::shifted(0.0, 1, 0.5))
          .rejection_rate;

  sim.method = TestMethod::pointwise;
  sim.seed = 405;
  const double power_w =
      run_power_study(sim, Association::flat(), Association::shifted(0.0, 1, 0.5))
          .rejection_rate;

  const bool pass = std::fabs(power_g - 0.51) <= 0.07 &&
                    std::fabs(power_w - 0.38) <= 0.10 && power_g > power_w;
  record(4, pass, "power: global = " + fmt(power_g) + " (target .51 +- .07), " +
                      "pointwise = " + fmt(power_w) +
                      " (target .38 +- .10), ordering " +
                      (power_g > power_w ? "G > W" : "violated"));
}

void criterion_5() {
  struct Cell {
    double g, h;
    EstimatorSpec spec;
    double ref_s1, ref_s3;  // reference Type I rates
  };
  const std::vector<Cell> cells{
      {0.0, 0.0, EstimatorSpec::trimmed(0.2), .048, .048},
      {0.0, 0.0, EstimatorSpec::quantile(0.50), .038, .044},
      {0.0, 0.0, EstimatorSpec::quantile(0.75), .049, .048},
      {0.0, 0.2, EstimatorSpec::trimmed(0.2), .022, .026},
      {0.0, 0.2, EstimatorSpec::quantile(0.50), .023, .028},
      {0.0, 0.2, EstimatorSpec::quantile(0.75), .029, .028},
      {0.2, 0.0, EstimatorSpec::trimmed(0.2), .040, .047},
      {0.2, 0.0, EstimatorSpec::quantile(0.25), .053, .056},
      {0.2, 0.0, EstimatorSpec::quantile(0.50), .036, .044},
      {0.2, 0.0, EstimatorSpec::quantile(0.75), .046, .045},
      {0.2, 0.2, EstimatorSpec::trimmed(0.2), .020, .024},
      {0.2, 0.2, EstimatorSpec::quantile(0.25), .040, .040},
      {0.2, 0.2, EstimatorSpec::quantile(0.50), .022, .028},
      {0.2, 0.2, EstimatorSpec::quantile(0.75), .026, .025},
  };

  std::vector<std::string> failures;
  std::uint64_t seed = 500;
  for (const auto& cell : cells) {
    for (int scenario = 0; scenario < 2; ++scenario) {
      const Association shape =
          scenario == 0 ? Association::flat() : Association::quadratic();
      const double reference = scenario == 0 ? cell.ref_s1 : cell.ref_s3;
      const double rate =
          type1_rate(cell.spec, cell.g, cell.h, shape, kSweepReps, ++seed);
      const bool under_coverage_cell = reference < 0.025;
      const bool ok = under_coverage_cell ? rate < 0.05
                                          : (rate >= 0.012 && rate <= 0.075);
      std::fprintf(stderr, "  g=%.1f h=%.1f %s %s: rate %.4f (ref %.3f)%s\n", cell.g,
                   cell.h, cell.spec.label().c_str(), scenario == 0 ? "S1" : "S3",
                   rate, reference, ok ? "" : "  <-- out of band");
      if (!ok) {
        failures.push_back("g=" + fmt(cell.g) + " h=" + fmt(cell.h) + " " +
                           cell.spec.label() + (scenario == 0 ? " S1" : " S3") +
                           " rate " + fmt(rate));
      }
    }
  }
  if (failures.empty()) {
    record(5, true, "all 28 Type I sweep cells within their bands");
  } else {
    std::string detail = std::to_string(failures.size()) + " cell(s) out of band: ";
    for (const auto& f : failures) detail += f + "; ";
    record(5, false, detail);
  }
}

void criterion_6() {
  Rng rng(6001);
  double max_weight_err = 0.0;
  double max_hd_err = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.next_index(50);
    const double q = 0.05 + 0.90 * rng.next_unit();
    const auto weights = hd_weights(n, q);
    const auto expected = oracle::hd_weights_quad(n, q);
    for (std::size_t i = 0; i < n; ++i) {
      max_weight_err = std::max(max_weight_err, std::fabs(weights[i] - expected[i]));
    }
    std::vector<double> z(n);
    for (double& v : z) v = 3.0 * rng.next_normal();
    max_hd_err = std::max(
        max_hd_err, std::fabs(harrell_davis(z, q) - oracle::harrell_davis_quad(z, q)));
  }

  double max_trim_err = 0.0;
  double max_wins_err = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.next_index(60);
    const double gamma = 0.49 * rng.next_unit();
    std::vector<double> z(n);
    for (double& v : z) v = 5.0 * rng.next_normal();
    max_trim_err = std::max(
        max_trim_err,
        std::fabs(trimmed_mean(z, gamma) - oracle::trimmed_mean_brute(z, gamma)));
    max_wins_err = std::max(max_wins_err,
                            std::fabs(winsorized_variance(z, gamma) -
                                      oracle::winsorized_variance_brute(z, gamma)));
  }

  double max_yuen_err = 0.0;
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n1 = 12 + rng.next_index(30);
    const std::size_t n2 = 12 + rng.next_index(30);
    std::vector<double> z1(n1), z2(n2);
    for (double& v : z1) v = rng.next_normal();
    for (double& v : z2) v = 0.4 + 1.3 * rng.next_normal();
    const YuenResult got = yuen_test(z1, z2, 0.2, 0.05);
    const oracle::YuenOracle expected = oracle::yuen_brute(z1, z2, 0.2, 0.05);
    max_yuen_err = std::max(
        {max_yuen_err, std::fabs(got.statistic - expected.statistic),
         std::fabs(got.degrees_of_freedom - expected.df),
         std::fabs(got.p_value - expected.p_value),
         std::fabs(got.ci_low - expected.ci_low),
         std::fabs(got.ci_high - expected.ci_high)});
  }

  const bool pass = max_weight_err <= 1e-10 && max_hd_err <= 1e-10 &&
                    max_trim_err <= 1e-11 && max_wins_err <= 1e-10 &&
                    max_yuen_err <= 1e-8;
  record(6, pass,
         "estimator oracles: weight err " + fmt_exp(max_weight_err) +
             ", HD err " + fmt_exp(max_hd_err) + ", trim err " +
             fmt_exp(max_trim_err) + ", winsvar err " + fmt_exp(max_wins_err) +
             ", yuen err " + fmt_exp(max_yuen_err));
}

void criterion_7() {
  Rng rng(7001);
  int bad = 0;
  std::string first_failure;
  int instances = 0;

  while (instances < 50) {
    const std::size_t n1 = 40 + rng.next_index(30);
    const std::size_t n2 = 40 + rng.next_index(30);
    const double shift = rng.next_unit();
    PairedSample s1, s2;
    s1.x.resize(n1);
    s1.y.resize(n1);
    s2.x.resize(n2);
    s2.y.resize(n2);
    for (auto& v : s1.x) v = rng.next_normal();
    for (auto& v : s1.y) v = rng.next_normal();
    for (auto& v : s2.x) v = rng.next_normal();
    for (auto& v : s2.y) v = shift + rng.next_normal();

    GlobalOptions options;
    options.estimator = instances % 2 == 0 ? EstimatorSpec::trimmed(0.2)
                                           : EstimatorSpec::quantile(0.5);
    options.num_boot = 100 + static_cast<int>(rng.next_index(100));
    options.seed = rng.next_u64();
    options.critical_p = 0.02 + 0.5 * rng.next_unit();

    GlobalTestResult base;
    try {
      options.threads = 1;
      base = anc_glob(s1, s2, options);
    } catch (const anc_error&) {
      continue;  // incomparable draw; take a fresh instance
    }
    ++instances;

    auto complain = [&](const std::string& what) {
      ++bad;
      if (first_failure.empty()) {
        first_failure = what + " (instance " + std::to_string(instances) + ")";
      }
    };

    // Determinism across worker counts.
    for (int workers : {2, 8}) {
      options.threads = workers;
      const GlobalTestResult again = anc_glob(s1, s2, options);
      if (again.p_value != base.p_value ||
          again.cloud.vectors != base.cloud.vectors ||
          again.cloud.distances != base.cloud.distances ||
          again.region.retained != base.region.retained) {
        complain("results differ at " + std::to_string(workers) + " workers");
      }
    }

    // Lattice membership.
    const double scaled = base.p_value * static_cast<double>(base.cloud.num_boot);
    if (std::fabs(scaled - std::round(scaled)) > 1e-9) complain("p-value off-lattice");

    // Decision and region consistency.
    if (base.reject != (base.p_value <= base.critical_p)) {
      complain("reject flag inconsistent with p <= critical_p");
    }
    if (base.region.null_in_region != !base.reject) {
      complain("region membership inconsistent with the decision");
    }

    // Affine invariance of the distances and hence the p-value.
    const std::size_t p = base.cloud.dim;
    std::vector<double> lin(p * p);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        lin[i * p + j] = (i == j ? 1.0 : 0.0) + 0.3 * rng.next_normal();
      }
    }
    std::vector<double> mapped(base.cloud.num_boot * p);
    for (std::size_t b = 0; b < base.cloud.num_boot; ++b) {
      for (std::size_t i = 0; i < p; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
          acc += lin[i * p + j] * base.cloud.vectors[b * p + j];
        }
        mapped[b * p + i] = acc;
      }
    }
    std::vector<double> mapped_center(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        mapped_center[i] += lin[i * p + j] * base.cloud.center[j];
      }
    }
    try {
      const BootstrapCloud mapped_cloud =
          finalize_cloud(std::move(mapped), base.cloud.num_boot, mapped_center);
      for (std::size_t b = 0; b < base.cloud.num_boot; ++b) {
        const double reference = base.cloud.distances[b];
        if (std::fabs(mapped_cloud.distances[b] - reference) >
            1e-8 * std::max(1.0, std::fabs(reference))) {
          complain("affine invariance of distances violated");
          break;
        }
      }
      if (std::fabs(mapped_cloud.null_distance - base.cloud.null_distance) >
          1e-8 * std::max(1.0, base.cloud.null_distance)) {
        complain("affine invariance of the null distance violated");
      }
      if (generalized_p_value(mapped_cloud) != base.p_value) {
        complain("affine invariance of the p-value violated");
      }
    } catch (const anc_error&) {
      complain("mapped cloud failed to factorize");
    }
  }

  record(7, bad == 0,
         bad == 0 ? "50 randomized instances: affine invariance, lattice, "
                    "consistency, determinism at 1/2/8 workers"
                  : std::to_string(bad) + " property violation(s); first: " +
                        first_failure);
}

void criterion_8() {
  const GhParams params[4] = {{0.0, 0.0}, {0.0, 0.2}, {0.2, 0.0}, {0.2, 0.2}};
  const double normal_deciles[9] = {
      -1.2815515655446004, -0.8416212335729143, -0.5244005127080407,
      -0.2533471031357997, 0.0,                 0.2533471031357997,
      0.5244005127080407,  0.8416212335729143,  1.2815515655446004};

  double worst = 0.0;
  std::string worst_case;
  for (int c = 0; c < 4; ++c) {
    Rng rng(8001 + static_cast<std::uint64_t>(c));
    auto draws = gh_sample(1000000, params[c], rng);
    for (int d = 0; d < 9; ++d) {
      const double expected = gh_transform(normal_deciles[d], params[c]);
      const auto idx = static_cast<std::size_t>(0.1 * (d + 1) * 1e6);
      std::nth_element(draws.begin(), draws.begin() + static_cast<long>(idx),
                       draws.end());
      const double got = draws[idx];
      const double err = std::fabs(got - expected);
      if (err > worst) {
        worst = err;
        worst_case = "g=" + fmt(params[c].g) + " h=" + fmt(params[c].h) +
                     " decile " + std::to_string(d + 1);
      }
    }
  }
  record(8, worst < 0.02,
         "g-and-h decile map: worst |error| " + fmt(worst) + " at " + worst_case +
             " (tolerance .02)");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto wanted = [&](int id) { return selected.empty() || selected.count(id) > 0; };

  if (wanted(1)) criterion_1();
  if (wanted(2)) criterion_2();
  if (wanted(3)) criterion_3();
  if (wanted(4)) criterion_4();
  if (wanted(5)) criterion_5();
  if (wanted(6)) criterion_6();
  if (wanted(7)) criterion_7();
  if (wanted(8)) criterion_8();

  int failures = 0;
  for (const auto& result : g_results) failures += result.pass ? 0 : 1;
  std::printf("%zu criteria run, %d failed\n", g_results.size(), failures);
  return failures == 0 ? 0 : 1;
}
