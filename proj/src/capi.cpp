#include "wlc/wlc.h"

#include <cmath>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "wlc/acceptance.hpp"
#include "wlc/error.hpp"
#include "wlc/scenario.hpp"
#include "wlc/table.hpp"

struct wlc_cavity {
  wlc::CavityModel model;
};

struct wlc_spectrum {
  wlc::TransmissionSpectrum data;
};

struct wlc_config {
  wlc::ScenarioConfig cfg;
};

struct wlc_report {
  std::string json;
  std::string text;
  bool ok = true;
};

namespace {

thread_local std::string g_last_error;

wlc_status status_of(wlc::ErrorCode code) {
  using wlc::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return WLC_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotOnResonance: return WLC_ERR_NOT_ON_RESONANCE;
    case ErrorCode::OscillationThreshold: return WLC_ERR_OSCILLATION_THRESHOLD;
    case ErrorCode::NoPositiveRoot: return WLC_ERR_NO_POSITIVE_ROOT;
    case ErrorCode::PeakAtEdge: return WLC_ERR_PEAK_AT_EDGE;
    case ErrorCode::NoHalfMaxCrossing: return WLC_ERR_NO_HALF_MAX_CROSSING;
    case ErrorCode::Infeasible: return WLC_ERR_INFEASIBLE;
    case ErrorCode::ParseError: return WLC_ERR_PARSE;
    case ErrorCode::ValidationError: return WLC_ERR_VALIDATION;
    case ErrorCode::IoError: return WLC_ERR_IO;
  }
  return WLC_ERR_INTERNAL;
}

template <class F>
wlc_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return WLC_OK;
  } catch (const wlc::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return WLC_ERR_INTERNAL;
}

void need(const void* p, const char* name) {
  if (!p) wlc::fail(wlc::ErrorCode::InvalidArgument, std::string(name) + " must not be NULL");
}

wlc::GainDoublet to_cpp(const wlc_gain_doublet& m) {
  return {m.omega0, m.gamma_sep, m.width, m.amplitude, m.alpha, m.length};
}

wlc_tune_result to_c(const wlc::TuneResult& r) {
  return {r.amplitude, r.width, r.achieved_ng, r.gain_factor.value_or(std::numeric_limits<double>::quiet_NaN()),
          r.iterations};
}

wlc::Scenario scenario_named(const char* name) {
  need(name, "scenario");
  const auto s = wlc::parse_scenario(name);
  if (!s) wlc::fail(wlc::ErrorCode::ValidationError, std::string("unknown scenario '") + name + "'");
  return *s;
}

}  // namespace

extern "C" {

const char* wlc_version(void) { return wlc::version(); }

const char* wlc_status_name(wlc_status status) {
  switch (status) {
    case WLC_OK: return "ok";
    case WLC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WLC_ERR_NOT_ON_RESONANCE: return "not on resonance";
    case WLC_ERR_OSCILLATION_THRESHOLD: return "oscillation threshold";
    case WLC_ERR_NO_POSITIVE_ROOT: return "no positive root";
    case WLC_ERR_PEAK_AT_EDGE: return "peak at edge";
    case WLC_ERR_NO_HALF_MAX_CROSSING: return "no half-maximum crossing";
    case WLC_ERR_INFEASIBLE: return "infeasible";
    case WLC_ERR_PARSE: return "parse error";
    case WLC_ERR_VALIDATION: return "validation error";
    case WLC_ERR_IO: return "i/o error";
    case WLC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* wlc_last_error(void) { return g_last_error.c_str(); }

wlc_status wlc_complex_index(const wlc_gain_doublet* medium, double omega, double* re, double* im) {
  return guarded([&] {
    need(medium, "medium");
    need(re, "re");
    need(im, "im");
    const auto m = to_cpp(*medium);
    m.validate();
    const auto n = wlc::complex_index(m, omega);
    *re = n.real();
    *im = n.imag();
  });
}

wlc_status wlc_dispersion_coefficients(const wlc_gain_doublet* medium, wlc_dispersion* out) {
  return guarded([&] {
    need(medium, "medium");
    need(out, "out");
    const auto d = wlc::dispersion_coefficients(to_cpp(*medium));
    *out = {d.n1, d.n2, d.n3, d.ng};
  });
}

wlc_status wlc_n3_doublet_approx(double n1, double gamma_sep, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlc::n3_doublet_approx(n1, gamma_sep);
  });
}

wlc_status wlc_single_pass_gain_db(const wlc_gain_doublet* medium, double omega, double* out) {
  return guarded([&] {
    need(medium, "medium");
    need(out, "out");
    *out = wlc::single_pass_gain_db(to_cpp(*medium), omega);
  });
}

wlc_status wlc_cavity_create(double length, double reflectivity, double transmissivity,
                             const wlc_gain_doublet* medium, wlc_gain_coupling coupling, wlc_cavity** out) {
  return guarded([&] {
    need(out, "out");
    wlc::CavityModel c;
    c.length = length;
    c.reflectivity = reflectivity;
    c.transmissivity = transmissivity;
    if (medium) c.medium = to_cpp(*medium);
    c.coupling = coupling == WLC_GAIN_FULL ? wlc::GainCoupling::Full : wlc::GainCoupling::PhaseOnly;
    c.validate();
    *out = new wlc_cavity{std::move(c)};
  });
}

void wlc_cavity_destroy(wlc_cavity* cavity) { delete cavity; }

double wlc_cavity_length(const wlc_cavity* cavity) {
  return cavity ? cavity->model.length : std::numeric_limits<double>::quiet_NaN();
}

wlc_status wlc_cavity_snap(const wlc_cavity* cavity, double omega_target, wlc_cavity** out) {
  return guarded([&] {
    need(cavity, "cavity");
    need(out, "out");
    *out = new wlc_cavity{wlc::snap_to_resonance(cavity->model, omega_target)};
  });
}

wlc_status wlc_round_trip_phase(const wlc_cavity* cavity, double omega, double* out) {
  return guarded([&] {
    need(cavity, "cavity");
    need(out, "out");
    *out = wlc::round_trip_phase(cavity->model, omega);
  });
}

wlc_status wlc_dephasing(const wlc_cavity* cavity, double delta, double omega0, double* full, double* truncated) {
  return guarded([&] {
    need(cavity, "cavity");
    const auto d = wlc::dephasing(cavity->model, delta, omega0);
    if (full) *full = d.full;
    if (truncated) *truncated = d.truncated;
  });
}

wlc_status wlc_transmission_at(const wlc_cavity* cavity, double omega, double* transmission, double* buildup) {
  return guarded([&] {
    need(cavity, "cavity");
    const auto r = wlc::transmission_at(cavity->model, omega);
    if (transmission) *transmission = r.transmission;
    if (buildup) *buildup = r.buildup;
  });
}

wlc_status wlc_spectrum_compute(const wlc_cavity* cavity, double omega0, double span, size_t points,
                                wlc_spectrum** out) {
  return guarded([&] {
    need(cavity, "cavity");
    need(out, "out");
    *out = new wlc_spectrum{wlc::spectrum(cavity->model, omega0, span, points)};
  });
}

void wlc_spectrum_destroy(wlc_spectrum* spectrum) { delete spectrum; }

size_t wlc_spectrum_size(const wlc_spectrum* spectrum) { return spectrum ? spectrum->data.size() : 0; }

wlc_status wlc_spectrum_column(const wlc_spectrum* spectrum, wlc_column column, double* buffer, size_t capacity) {
  return guarded([&] {
    need(spectrum, "spectrum");
    need(buffer, "buffer");
    const auto& s = spectrum->data;
    const size_t n = std::min(capacity, s.size());
    for (size_t i = 0; i < n; ++i) {
      switch (column) {
        case WLC_COL_DETUNING: buffer[i] = s.detunings[i]; break;
        case WLC_COL_TRANSMISSION: buffer[i] = s.transmission[i]; break;
        case WLC_COL_BUILDUP: buffer[i] = s.buildup[i]; break;
        case WLC_COL_PHASE: buffer[i] = s.phase[i]; break;
        case WLC_COL_INDEX_RE: buffer[i] = s.index_re[i]; break;
        case WLC_COL_INDEX_IM: buffer[i] = s.index_im[i]; break;
        case WLC_COL_FLAG_OSCILLATION: buffer[i] = s.above_threshold[i] ? 1.0 : 0.0; break;
        default: wlc::fail(wlc::ErrorCode::InvalidArgument, "unknown column");
      }
    }
  });
}

wlc_status wlc_spectrum_write(const wlc_spectrum* spectrum, const char* path, wlc_format format) {
  return guarded([&] {
    need(spectrum, "spectrum");
    need(path, "path");
    wlc::write_table(wlc::spectrum_table(spectrum->data),
                     format == WLC_FORMAT_JSON ? wlc::TableFormat::Json : wlc::TableFormat::Csv, path);
  });
}

wlc_status wlc_empty_linewidth(double reflectivity, double length, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlc::empty_linewidth(reflectivity, length);
  });
}

wlc_status wlc_loss_beta(double reflectivity, double rho, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlc::loss_beta(reflectivity, rho);
  });
}

wlc_status wlc_predict_wlc_linewidth(double ng, double n3, double omega0, double medium_length, double cavity_length,
                                     double beta, double gamma_empty, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlc::predict_wlc_linewidth({ng, n3, omega0, medium_length, cavity_length, beta, gamma_empty});
  });
}

wlc_status wlc_ideal_wlc_linewidth(double beta, double gamma_empty, double gamma_sep, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlc::ideal_wlc_linewidth(beta, gamma_empty, gamma_sep);
  });
}

wlc_status wlc_measure_fwhm(const wlc_spectrum* spectrum, double* out) {
  return guarded([&] {
    need(spectrum, "spectrum");
    need(out, "out");
    *out = wlc::measure_fwhm(spectrum->data);
  });
}

wlc_status wlc_buildup_reduction(double lossless_peak, double lossy_peak, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlc::buildup_reduction(lossless_peak, lossy_peak);
  });
}

wlc_status wlc_required_n1(double cavity_length, double medium_length, double omega0, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wlc::required_n1(cavity_length, medium_length, omega0);
  });
}

wlc_status wlc_tune_gain_amplitude(const wlc_gain_doublet* tmpl, double target_ng, wlc_tune_result* out) {
  return guarded([&] {
    need(tmpl, "tmpl");
    need(out, "out");
    *out = to_c(wlc::tune_gain_amplitude(to_cpp(*tmpl), target_ng));
  });
}

wlc_status wlc_tune_with_width_scaling(const wlc_gain_doublet* tmpl, double target_ng, double reference_amplitude,
                                       wlc_tune_result* out) {
  return guarded([&] {
    need(tmpl, "tmpl");
    need(out, "out");
    *out = to_c(wlc::tune_with_width_scaling(to_cpp(*tmpl), target_ng, reference_amplitude));
  });
}

wlc_status wlc_config_load_file(const char* path, wlc_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new wlc_config{wlc::load_config_file(path)};
  });
}

wlc_status wlc_config_load_text(const char* text, wlc_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new wlc_config{wlc::load_config(text)};
  });
}

wlc_status wlc_config_default(const char* scenario, wlc_config** out) {
  return guarded([&] {
    need(out, "out");
    wlc::ScenarioConfig cfg = wlc::load_config("");
    cfg.scenario = scenario_named(scenario);
    *out = new wlc_config{std::move(cfg)};
  });
}

void wlc_config_destroy(wlc_config* config) { delete config; }

wlc_status wlc_config_set_scenario(wlc_config* config, const char* scenario) {
  return guarded([&] {
    need(config, "config");
    config->cfg.scenario = scenario_named(scenario);
  });
}

const char* wlc_config_scenario(const wlc_config* config) {
  return config ? wlc::to_string(config->cfg.scenario) : "";
}

wlc_status wlc_run_scenario(const wlc_config* config, const char* output, int format, int verbose, wlc_report** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    wlc::RunOptions opts;
    if (output && *output) opts.output = output;
    if (format == WLC_FORMAT_CSV) opts.format = wlc::TableFormat::Csv;
    else if (format == WLC_FORMAT_JSON) opts.format = wlc::TableFormat::Json;
    std::ostringstream log;
    opts.verbose = verbose != 0;
    opts.log = &log;
    // The selftest lines always go to the text channel.
    if (config->cfg.scenario == wlc::Scenario::SelfTest) opts.verbose = true;
    const auto result = wlc::run_scenario(config->cfg, opts);
    auto* report = new wlc_report;
    report->json = result.report.dump(2);
    report->text = log.str();
    report->ok = result.ok;
    *out = report;
  });
}

void wlc_report_destroy(wlc_report* report) { delete report; }

const char* wlc_report_json(const wlc_report* report) { return report ? report->json.c_str() : ""; }

const char* wlc_report_text(const wlc_report* report) { return report ? report->text.c_str() : ""; }

int wlc_report_ok(const wlc_report* report) { return report && report->ok ? 1 : 0; }

}  // extern "C"
