/*
 * C interface to the essfit scaling-analysis library.
 *
 * All objects are opaque handles created and destroyed here. Functions
 * return ESSFIT_OK on success; on failure they return the error class and
 * leave a human-readable message in essfit_last_error() (thread local).
 * Out-parameters are written only on success.
 */
#ifndef ESSFIT_C_API_H
#define ESSFIT_C_API_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) && defined(ESSFIT_SHARED)
#if defined(ESSFIT_BUILDING)
#define ESSFIT_API __declspec(dllexport)
#else
#define ESSFIT_API __declspec(dllimport)
#endif
#elif defined(__GNUC__)
#define ESSFIT_API __attribute__((visibility("default")))
#else
#define ESSFIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum essfit_status {
    ESSFIT_OK = 0,
    ESSFIT_ERROR_DOMAIN = 1,     /* input outside the operation's domain */
    ESSFIT_ERROR_CONTRACT = 2,   /* caller broke an interface precondition */
    ESSFIT_ERROR_DEGENERATE = 3, /* input valid but carries no information */
    ESSFIT_ERROR_IO = 4,         /* file missing, malformed, or unwritable */
    ESSFIT_ERROR_NULL = 5,       /* required pointer argument was NULL */
    ESSFIT_ERROR_INTERNAL = 6
} essfit_status;

typedef enum essfit_moment_kind {
    ESSFIT_MOMENT_SIGNED = 0,
    ESSFIT_MOMENT_ABSOLUTE = 1
} essfit_moment_kind;

typedef enum essfit_preferred {
    ESSFIT_PREFER_SHARED = 0,
    ESSFIT_PREFER_RE_DEPENDENT = 1
} essfit_preferred;

typedef struct essfit_dataset essfit_dataset;  /* experiments: labeled ESS point sets */
typedef struct essfit_signal essfit_signal;    /* evenly sampled velocity record */
typedef struct essfit_curve essfit_curve;      /* structure function over separations */
typedef struct essfit_result essfit_result;    /* full analysis outcome */

/* Library version string ("<major>.<minor>.<patch>"). */
ESSFIT_API const char* essfit_version(void);

/* Message of the calling thread's most recent failure; never NULL. */
ESSFIT_API const char* essfit_last_error(void);

/* ---- synthetic data ---------------------------------------------------- */

/* Generator parameters. Initialize with essfit_synth_params_init to get
 * the documented defaults before overriding fields. */
typedef struct essfit_synth_params {
    const double* re;      /* Reynolds numbers, one experiment each */
    size_t n_re;
    double alpha1;         /* exponent correction coefficient */
    double c0, c1;         /* prefactor coefficients */
    double b3;             /* third-order coefficient, nonzero */
    double eps;            /* mean dissipation rate [m^2/s^3] */
    double lambda_t;       /* external length scale [m] */
    double sharpness;      /* dissipation-range crossover sharpness, >= 1 */
    double noise_sigma;    /* additive log10 noise level, >= 0 */
    uint64_t seed;
    double r_min, r_max;   /* separation grid bounds [m] */
    size_t n_points;       /* grid size, >= 2 */
} essfit_synth_params;

ESSFIT_API void essfit_synth_params_init(essfit_synth_params* params);

ESSFIT_API essfit_status essfit_dataset_synthesize(const essfit_synth_params* params,
                                                   essfit_dataset** out);

/* ---- datasets ----------------------------------------------------------- */

ESSFIT_API essfit_status essfit_dataset_from_csv(const char* path, essfit_dataset** out);

/* Build one ESS experiment from a signal: second and third order structure
 * functions on a log lag grid (points_per_decade, 0 = default), paired as
 * (log10 |D3|, log10 D2). re may be NaN for an untagged experiment. */
ESSFIT_API essfit_status essfit_dataset_from_signal(const essfit_signal* signal,
                                                    essfit_moment_kind kind,
                                                    int points_per_decade, const char* label,
                                                    double re, essfit_dataset** out);

ESSFIT_API essfit_status essfit_dataset_write_csv(const essfit_dataset* dataset, const char* path,
                                                  const char* comment /* nullable */);

ESSFIT_API size_t essfit_dataset_count(const essfit_dataset* dataset);
ESSFIT_API const char* essfit_dataset_label(const essfit_dataset* dataset, size_t index);
/* Returns 1 and writes *re when experiment index is Re-tagged, else 0. */
ESSFIT_API int essfit_dataset_re(const essfit_dataset* dataset, size_t index, double* re);
ESSFIT_API size_t essfit_dataset_point_count(const essfit_dataset* dataset, size_t index);

ESSFIT_API void essfit_dataset_free(essfit_dataset* dataset);

/* ---- signals and structure functions ------------------------------------ */

/* Random-phase synthesis: length n (power of two), mode amplitudes
 * k^(-spectrum_exponent/2), uniform phases drawn from seed. */
ESSFIT_API essfit_status essfit_signal_synthesize(size_t n, double spectrum_exponent,
                                                  double spacing, uint64_t seed,
                                                  essfit_signal** out);

ESSFIT_API essfit_status essfit_signal_read(const char* path, essfit_signal** out);
ESSFIT_API essfit_status essfit_signal_write(const essfit_signal* signal, const char* path);
ESSFIT_API size_t essfit_signal_length(const essfit_signal* signal);
ESSFIT_API double essfit_signal_spacing(const essfit_signal* signal);
ESSFIT_API void essfit_signal_free(essfit_signal* signal);

/* Order-p structure function on a log-spaced lag grid (points_per_decade,
 * 0 = default). Overlapping increments, no wraparound. */
ESSFIT_API essfit_status essfit_signal_structure_function(const essfit_signal* signal, int order,
                                                          essfit_moment_kind kind,
                                                          int points_per_decade,
                                                          essfit_curve** out);

ESSFIT_API size_t essfit_curve_length(const essfit_curve* curve);
/* Copy up to capacity entries into any non-NULL arrays; returns the count copied. */
ESSFIT_API size_t essfit_curve_copy(const essfit_curve* curve, double* separations, double* values,
                                    uint64_t* sample_counts, size_t capacity);
/* CSV: comment header with order and kind, then r,value,count rows. */
ESSFIT_API essfit_status essfit_curve_write_csv(const essfit_curve* curve, const char* path);
ESSFIT_API void essfit_curve_free(essfit_curve* curve);

/* ---- analysis ------------------------------------------------------------ */

typedef struct essfit_analysis_config {
    double k_threshold;      /* dissipation split: r > k_threshold * lambda_K */
    double slope_tol;        /* slope-rule departure tolerance from 2/3 */
    double margin;           /* model-preference RSS margin */
    int with_constants;      /* recover c0, c1 (needs b3, eps, lambda_t) */
    double b3;
    double eps;
    double lambda_t;
    int require_similarity;  /* fail when < 2 Re-tagged experiments (default on) */
} essfit_analysis_config;

ESSFIT_API void essfit_analysis_config_init(essfit_analysis_config* config);

ESSFIT_API essfit_status essfit_analyze(const essfit_dataset* dataset,
                                        const essfit_analysis_config* config,
                                        essfit_result** out);

typedef struct essfit_line_fit {
    double slope;
    double intercept;
    double slope_stderr;
    double residual_rms;
    size_t n_points;
} essfit_line_fit;

ESSFIT_API size_t essfit_result_fit_count(const essfit_result* result);
ESSFIT_API essfit_status essfit_result_fit(const essfit_result* result, size_t index, double* re,
                                           essfit_line_fit* fit);
ESSFIT_API const char* essfit_result_fit_label(const essfit_result* result, size_t index);

ESSFIT_API essfit_status essfit_result_alpha1(const essfit_result* result, double* alpha1_hat);
/* Returns 1 and writes the constants when recovery ran, else 0. */
ESSFIT_API int essfit_result_constants(const essfit_result* result, double* c0_hat,
                                       double* c1_hat);
ESSFIT_API essfit_status essfit_result_comparison(const essfit_result* result, double* rss_shared,
                                                  double* rss_per_re, essfit_preferred* preferred,
                                                  int* monotone_decreasing);

ESSFIT_API size_t essfit_result_excluded_count(const essfit_result* result);
ESSFIT_API const char* essfit_result_excluded_reason(const essfit_result* result, size_t index);

/* Anchored slope profile of experiment set_index: up to capacity (x, slope)
 * pairs copied into non-NULL arrays; returns the count copied. */
ESSFIT_API size_t essfit_result_slope_profile(const essfit_result* result, size_t set_index,
                                              double* x, double* slope, size_t capacity);
/* Index of the first inertial point of experiment set_index. */
ESSFIT_API essfit_status essfit_result_split_index(const essfit_result* result, size_t set_index,
                                                   size_t* split_index);

typedef struct essfit_report_options {
    const char* const* config_keys;   /* flat configuration echo */
    const char* const* config_values;
    size_t n_config;
    const char* const* digest_paths;  /* input files to fingerprint */
    size_t n_digest_paths;
    int no_timestamp;
} essfit_report_options;

ESSFIT_API essfit_status essfit_result_write_report(const essfit_result* result, const char* path,
                                                    const essfit_report_options* options);

/* Plot emission; parts is a bitwise OR of the flags below. a1 and a2 may be
 * NaN to place each overlay line through the pooled centroid. */
#define ESSFIT_PLOT_POINTS 1u
#define ESSFIT_PLOT_SLOPES 2u
#define ESSFIT_PLOT_OVERLAY 4u
#define ESSFIT_PLOT_ALL 7u

ESSFIT_API essfit_status essfit_result_emit_plots(const essfit_result* result, const char* prefix,
                                                  unsigned parts, double a1, double a2);

ESSFIT_API void essfit_result_free(essfit_result* result);

#ifdef __cplusplus
}
#endif

#endif /* ESSFIT_C_API_H */
