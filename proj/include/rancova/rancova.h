/*
 * rancova - robust ANCOVA for two independent groups.
 *
 * C interface to the shared library. The core compares two groups'
 * conditional location (trimmed mean or Harrell-Davis quantile) as a
 * function of a covariate using a running-interval smoother, without
 * assuming straight regression lines. It provides:
 *
 *   - a global bootstrap test of equal conditional location at all design
 *     points at once, with a simulation-calibrated critical p-value;
 *   - pointwise tests at the design points with Hochberg familywise
 *     adjustment (Yuen for trimmed means, percentile bootstrap for
 *     quantiles);
 *   - a Monte Carlo harness for Type I error and power studies with
 *     g-and-h error distributions.
 *
 * Conventions: functions return ANC_OK on success or a status code on
 * failure; anc_last_error() describes the most recent failure on the
 * calling thread. Objects returned through handle out-parameters are owned
 * by the caller and released with the matching *_free function. All
 * randomized entry points are deterministic for a fixed seed, independent
 * of the thread count.
 */

#ifndef RANCOVA_H
#define RANCOVA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum anc_status {
  ANC_OK = 0,
  ANC_ERR_INVALID_ARGUMENT = 1,
  ANC_ERR_INSUFFICIENT_DATA = 2,
  ANC_ERR_NOT_COMPARABLE = 3,
  ANC_ERR_DEGENERATE = 4,
  ANC_ERR_RESAMPLE_EXHAUSTED = 5,
  ANC_ERR_IO = 6,
  ANC_ERR_INTERNAL = 7
} anc_status;

const char* anc_version(void);
const char* anc_status_name(anc_status status);

/* Message for the most recent failure on this thread; empty if none. */
const char* anc_last_error(void);

/* ------------------------------------------------------------------ */
/* Configuration                                                       */

typedef enum anc_estimator_kind {
  ANC_ESTIMATOR_TRIMMED_MEAN = 0,
  ANC_ESTIMATOR_HD_QUANTILE = 1
} anc_estimator_kind;

typedef struct anc_estimator {
  anc_estimator_kind kind;
  double param; /* trimming proportion in [0,0.5), or quantile in (0,1) */
} anc_estimator;

void anc_estimator_init(anc_estimator* estimator); /* 20% trimmed mean */

typedef struct anc_smoother_config {
  double span;          /* neighborhood half-width in MADN units (default 1.0) */
  int min_neighbors;    /* comparability floor per group (default 12) */
  int num_points;       /* design points; must be 5 unless quartile_points */
  int quartile_points;  /* nonzero: use the three quartiles of group 1's x */
  int paired_bootstrap; /* nonzero: whole-group pair resampling for the
                         * global test instead of the default per-point
                         * within-neighborhood resampling */
  int freeze_madn;      /* paired scheme: keep the original MADN scale */
  int warn_incomparable; /* nonzero: failed point checks warn instead of error */
} anc_smoother_config;

void anc_smoother_config_init(anc_smoother_config* config);

/* ------------------------------------------------------------------ */
/* Samples                                                             */

typedef struct anc_sample anc_sample;

/* Copies n (covariate, outcome) pairs; all values must be finite. */
anc_status anc_sample_create(const double* x, const double* y, size_t n,
                             anc_sample** out);
void anc_sample_free(anc_sample* sample);
size_t anc_sample_size(const anc_sample* sample);
/* Copies the data into caller buffers of length anc_sample_size(). */
anc_status anc_sample_get(const anc_sample* sample, double* x, double* y);

/* New sample without the covariate boxplot outliers (needs n >= 4). */
anc_status anc_sample_drop_x_outliers(const anc_sample* sample, anc_sample** out,
                                      size_t* removed);

/* ------------------------------------------------------------------ */
/* Location estimators                                                 */

anc_status anc_trimmed_mean(const double* z, size_t n, double gamma, double* out);
anc_status anc_winsorized_variance(const double* z, size_t n, double gamma, double* out);
anc_status anc_harrell_davis(const double* z, size_t n, double q, double* out);
anc_status anc_madn(const double* z, size_t n, double* out);

/* ------------------------------------------------------------------ */
/* Smoother                                                            */

/* Design points for comparing the groups. values/n1/n2 must hold at least
 * anc_smoother_config.num_points entries (3 in quartile mode); *count
 * receives the number written. */
anc_status anc_design_points(const anc_sample* group1, const anc_sample* group2,
                             const anc_smoother_config* config, double* values,
                             long* n1, long* n2, int* count);

/* Smoother fit of one group on an arbitrary grid; entries with fewer than
 * two neighbors are set to NaN. */
anc_status anc_smoother_curve(const anc_sample* sample, const anc_estimator* estimator,
                              const anc_smoother_config* config, const double* grid,
                              size_t grid_len, double* fit);

/* ------------------------------------------------------------------ */
/* Global test                                                         */

typedef struct anc_global_options {
  anc_estimator estimator;
  anc_smoother_config smoother;
  double alpha;
  int num_boot;      /* bootstrap resamples B (default 500) */
  int num_crit;      /* calibration replications A (default 1000) */
  uint64_t seed;
  int threads;       /* <1 selects hardware concurrency */
  double critical_p; /* NaN: calibrate; otherwise use this cutoff */
} anc_global_options;

void anc_global_options_init(anc_global_options* options);

typedef struct anc_global_result anc_global_result;

anc_status anc_global_test(const anc_sample* group1, const anc_sample* group2,
                           const anc_global_options* options, anc_global_result** out);
void anc_global_result_free(anc_global_result* result);

double anc_global_result_p_value(const anc_global_result* result);
double anc_global_result_critical_p(const anc_global_result* result);
int anc_global_result_reject(const anc_global_result* result);
/* Nonzero when the critical p-value was calibrated during this run. */
int anc_global_result_calibrated(const anc_global_result* result);

typedef struct anc_point_record {
  double x;
  long n1;
  long n2;
  double estimate1;
  double estimate2;
  double delta;
} anc_point_record;

int anc_global_result_num_points(const anc_global_result* result);
anc_status anc_global_result_point(const anc_global_result* result, int k,
                                   anc_point_record* record);

/* Confidence-region summary: the bootstrap vectors with the rank_threshold
 * smallest distances form the region; the null vector is inside exactly
 * when the test does not reject. */
int anc_global_result_region_rank_threshold(const anc_global_result* result);
int anc_global_result_null_in_region(const anc_global_result* result);
double anc_global_result_null_distance(const anc_global_result* result);

long anc_global_result_num_boot(const anc_global_result* result);
/* Squared Mahalanobis distance of each bootstrap vector (num_boot values). */
anc_status anc_global_result_distances(const anc_global_result* result, double* out);
/* Row indices of the vectors retained by the confidence region. *count is
 * the buffer capacity on input and the number written on output. */
anc_status anc_global_result_retained(const anc_global_result* result, size_t* out,
                                      size_t* count);
long anc_global_result_bootstrap_redraws(const anc_global_result* result);

int anc_global_result_num_warnings(const anc_global_result* result);
const char* anc_global_result_warning(const anc_global_result* result, int i);

/* ------------------------------------------------------------------ */
/* Pointwise tests                                                     */

typedef struct anc_w_options {
  anc_estimator estimator;
  anc_smoother_config smoother;
  double alpha;  /* familywise level */
  int num_boot;  /* percentile bootstrap resamples (quantile estimator) */
  uint64_t seed;
  int threads;
} anc_w_options;

void anc_w_options_init(anc_w_options* options);

typedef struct anc_w_result anc_w_result;

anc_status anc_w_test(const anc_sample* group1, const anc_sample* group2,
                      const anc_w_options* options, anc_w_result** out);
void anc_w_result_free(anc_w_result* result);

typedef struct anc_w_point {
  double x;
  long n1;
  long n2;
  double estimate1;
  double estimate2;
  double delta;
  double p_value;
  double ci_low;
  double ci_high;
  int reject_adjusted;
} anc_w_point;

/* "yuen" or "percentile-bootstrap". */
const char* anc_w_result_method(const anc_w_result* result);
int anc_w_result_num_points(const anc_w_result* result);
anc_status anc_w_result_point(const anc_w_result* result, int k, anc_w_point* point);
int anc_w_result_any_reject(const anc_w_result* result);
int anc_w_result_num_warnings(const anc_w_result* result);
const char* anc_w_result_warning(const anc_w_result* result, int i);

/* ------------------------------------------------------------------ */
/* Calibration                                                         */

/* Critical p-value for the global test: the alpha quantile (Harrell-Davis)
 * of num_crit null p-values simulated from independent standard normal
 * pairs of the given sizes. redraws may be NULL. */
anc_status anc_calibrate_critical_p(int n1, int n2, double alpha, int num_crit,
                                    int num_boot, const anc_estimator* estimator,
                                    const anc_smoother_config* smoother, uint64_t seed,
                                    int threads, double* critical_p, long* redraws);

/* ------------------------------------------------------------------ */
/* Monte Carlo studies                                                 */

typedef enum anc_sim_method {
  ANC_METHOD_GLOBAL = 0,
  ANC_METHOD_POINTWISE = 1
} anc_sim_method;

/* Conditional mean of one simulated group: y = slope * x^power + offset + e
 * with standard normal x and g-and-h distributed e. power 0 is a pure
 * location shift. */
typedef struct anc_association {
  double slope;
  int power;
  double offset;
} anc_association;

typedef struct anc_sim_spec {
  int n1;
  int n2;
  double gh_g; /* skewness parameter of the error distribution */
  double gh_h; /* tail-heaviness parameter */
  anc_association group1;
  anc_association group2;
  anc_sim_method method;
  anc_estimator estimator;
  anc_smoother_config smoother;
  double alpha;
  int num_boot;
  int num_crit;
  long replications;
  uint64_t seed;
  int threads;
  double critical_p; /* NaN: calibrate once and reuse across replications */
} anc_sim_spec;

void anc_sim_spec_init(anc_sim_spec* spec);

typedef struct anc_sim_result {
  double rejection_rate;
  long replications;
  long failures;
  double standard_error;
  double critical_p; /* cutoff used by the global method; NaN otherwise */
} anc_sim_result;

anc_status anc_run_simulation(const anc_sim_spec* spec, anc_sim_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RANCOVA_H */
