/*
 * C interface to the white-light cavity simulation library.
 *
 * Value types (doublet parameters, coefficients, tuning results) are plain
 * structs. Compound state (cavities, spectra, configurations, reports) lives
 * behind opaque handles that must be released with the matching *_destroy.
 * Every fallible call returns a wlc_status; on failure wlc_last_error() gives
 * a message for the calling thread. All rates are angular (rad/s).
 */
#ifndef WLC_WLC_H
#define WLC_WLC_H

#include <stddef.h>

#if defined(WLC_BUILDING_LIBRARY)
#define WLC_API __attribute__((visibility("default")))
#else
#define WLC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wlc_status {
  WLC_OK = 0,
  WLC_ERR_INVALID_ARGUMENT = 1,
  WLC_ERR_NOT_ON_RESONANCE = 2,
  WLC_ERR_OSCILLATION_THRESHOLD = 3,
  WLC_ERR_NO_POSITIVE_ROOT = 4,
  WLC_ERR_PEAK_AT_EDGE = 5,
  WLC_ERR_NO_HALF_MAX_CROSSING = 6,
  WLC_ERR_INFEASIBLE = 7,
  WLC_ERR_PARSE = 8,
  WLC_ERR_VALIDATION = 9,
  WLC_ERR_IO = 10,
  WLC_ERR_INTERNAL = 11
} wlc_status;

WLC_API const char* wlc_version(void);
WLC_API const char* wlc_status_name(wlc_status status);
/* Message of the last failed call on this thread; "" if none. */
WLC_API const char* wlc_last_error(void);

/* ---- gain medium ------------------------------------------------------- */

typedef struct wlc_gain_doublet {
  double omega0;    /* midpoint of the two lines */
  double gamma_sep; /* line separation */
  double width;     /* HWHM of each line */
  double amplitude; /* Lorentzian strength M */
  double alpha;     /* residual amplitude loss, 1/m */
  double length;    /* m */
} wlc_gain_doublet;

typedef struct wlc_dispersion {
  double n1, n2, n3, ng;
} wlc_dispersion;

WLC_API wlc_status wlc_complex_index(const wlc_gain_doublet* medium, double omega, double* re, double* im);
WLC_API wlc_status wlc_dispersion_coefficients(const wlc_gain_doublet* medium, wlc_dispersion* out);
WLC_API wlc_status wlc_n3_doublet_approx(double n1, double gamma_sep, double* out);
WLC_API wlc_status wlc_single_pass_gain_db(const wlc_gain_doublet* medium, double omega, double* out);

/* ---- cavity ------------------------------------------------------------ */

typedef struct wlc_cavity wlc_cavity;

typedef enum wlc_gain_coupling { WLC_GAIN_PHASE_ONLY = 0, WLC_GAIN_FULL = 1 } wlc_gain_coupling;

/* medium may be NULL for an empty cavity. */
WLC_API wlc_status wlc_cavity_create(double length, double reflectivity, double transmissivity,
                                     const wlc_gain_doublet* medium, wlc_gain_coupling coupling,
                                     wlc_cavity** out);
WLC_API void wlc_cavity_destroy(wlc_cavity* cavity);
WLC_API double wlc_cavity_length(const wlc_cavity* cavity);
/* New cavity with L adjusted so omega_target is a resonance. */
WLC_API wlc_status wlc_cavity_snap(const wlc_cavity* cavity, double omega_target, wlc_cavity** out);
WLC_API wlc_status wlc_round_trip_phase(const wlc_cavity* cavity, double omega, double* out);
WLC_API wlc_status wlc_dephasing(const wlc_cavity* cavity, double delta, double omega0, double* full,
                                 double* truncated);
WLC_API wlc_status wlc_transmission_at(const wlc_cavity* cavity, double omega, double* transmission,
                                       double* buildup);

/* ---- spectra ----------------------------------------------------------- */

typedef struct wlc_spectrum wlc_spectrum;

typedef enum wlc_column {
  WLC_COL_DETUNING = 0, /* rad/s */
  WLC_COL_TRANSMISSION = 1,
  WLC_COL_BUILDUP = 2,
  WLC_COL_PHASE = 3,
  WLC_COL_INDEX_RE = 4,
  WLC_COL_INDEX_IM = 5,
  WLC_COL_FLAG_OSCILLATION = 6
} wlc_column;

typedef enum wlc_format { WLC_FORMAT_CSV = 0, WLC_FORMAT_JSON = 1 } wlc_format;

WLC_API wlc_status wlc_spectrum_compute(const wlc_cavity* cavity, double omega0, double span, size_t points,
                                        wlc_spectrum** out);
WLC_API void wlc_spectrum_destroy(wlc_spectrum* spectrum);
WLC_API size_t wlc_spectrum_size(const wlc_spectrum* spectrum);
/* Copies min(capacity, size) values of one column into buffer. */
WLC_API wlc_status wlc_spectrum_column(const wlc_spectrum* spectrum, wlc_column column, double* buffer,
                                       size_t capacity);
WLC_API wlc_status wlc_spectrum_write(const wlc_spectrum* spectrum, const char* path, wlc_format format);

/* ---- linewidths -------------------------------------------------------- */

WLC_API wlc_status wlc_empty_linewidth(double reflectivity, double length, double* out);
WLC_API wlc_status wlc_loss_beta(double reflectivity, double rho, double* out);
WLC_API wlc_status wlc_predict_wlc_linewidth(double ng, double n3, double omega0, double medium_length,
                                             double cavity_length, double beta, double gamma_empty, double* out);
WLC_API wlc_status wlc_ideal_wlc_linewidth(double beta, double gamma_empty, double gamma_sep, double* out);
WLC_API wlc_status wlc_measure_fwhm(const wlc_spectrum* spectrum, double* out);
WLC_API wlc_status wlc_buildup_reduction(double lossless_peak, double lossy_peak, double* out);

/* ---- white-light tuning ------------------------------------------------ */

typedef struct wlc_tune_result {
  double amplitude;
  double width;
  double achieved_ng;
  double gain_factor; /* NaN when no reference amplitude applies */
  int iterations;
} wlc_tune_result;

WLC_API wlc_status wlc_required_n1(double cavity_length, double medium_length, double omega0, double* out);
WLC_API wlc_status wlc_tune_gain_amplitude(const wlc_gain_doublet* tmpl, double target_ng, wlc_tune_result* out);
WLC_API wlc_status wlc_tune_with_width_scaling(const wlc_gain_doublet* tmpl, double target_ng,
                                               double reference_amplitude, wlc_tune_result* out);

/* ---- scenarios --------------------------------------------------------- */

typedef struct wlc_config wlc_config;
typedef struct wlc_report wlc_report;

WLC_API wlc_status wlc_config_load_file(const char* path, wlc_config** out);
WLC_API wlc_status wlc_config_load_text(const char* text, wlc_config** out);
/* Default configuration for a scenario name (empty, spectrum, predict, tune,
 * sweep_separation, selftest). */
WLC_API wlc_status wlc_config_default(const char* scenario, wlc_config** out);
WLC_API void wlc_config_destroy(wlc_config* config);
WLC_API wlc_status wlc_config_set_scenario(wlc_config* config, const char* scenario);
WLC_API const char* wlc_config_scenario(const wlc_config* config);

/* output may be NULL or "" to use the config's output path. format < 0 keeps
 * the config's format. */
WLC_API wlc_status wlc_run_scenario(const wlc_config* config, const char* output, int format, int verbose,
                                    wlc_report** out);
WLC_API void wlc_report_destroy(wlc_report* report);
/* Pretty-printed JSON document; owned by the report. */
WLC_API const char* wlc_report_json(const wlc_report* report);
/* Human-readable lines (selftest: one per criterion); owned by the report. */
WLC_API const char* wlc_report_text(const wlc_report* report);
/* 1 when every check passed (selftest) or every sweep entry succeeded. */
WLC_API int wlc_report_ok(const wlc_report* report);

#ifdef __cplusplus
}
#endif

#endif /* WLC_WLC_H */
