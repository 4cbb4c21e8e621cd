#include "wlc/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include "wlc/acceptance.hpp"
#include "wlc/error.hpp"
#include "wlc/table.hpp"
#include "wlc/units.hpp"

namespace wlc {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void log_line(const RunOptions& opts, const std::string& msg) {
  if (opts.verbose && opts.log) *opts.log << msg << '\n';
}

TableFormat format_of(const ScenarioConfig& cfg, const RunOptions& opts) {
  return opts.format.value_or(cfg.output.format);
}

std::filesystem::path output_of(const ScenarioConfig& cfg, const RunOptions& opts) {
  return opts.output.empty() ? std::filesystem::path(cfg.output.path) : opts.output;
}

double peak_of(const std::vector<double>& v) {
  double peak = kNaN;
  for (double x : v)
    if (std::isfinite(x) && !(x <= peak)) peak = x;
  return peak;
}

json medium_json(const GainDoublet& m) {
  const auto k = dispersion_coefficients(m);
  json j;
  j["separation_mhz"] = rad_s_to_mhz(m.gamma_sep);
  j["width_fwhm_mhz"] = rad_s_to_mhz(2.0 * m.width);
  j["amplitude_rad_s"] = m.amplitude;
  j["n1"] = k.n1;
  j["n2"] = k.n2;
  j["n3"] = k.n3;
  j["n3_doublet_approx"] = n3_doublet_approx(k.n1, m.gamma_sep);
  j["ng"] = k.ng;
  j["gain_db_center"] = single_pass_gain_db(m, m.omega0);
  j["gain_db_line"] = single_pass_gain_db(m, m.omega0 + 0.5 * m.gamma_sep);
  return j;
}

json cavity_json(const CavityModel& c) {
  json j;
  j["length_m"] = c.length;
  j["reflectivity"] = c.reflectivity;
  j["transmissivity"] = c.transmissivity;
  j["finesse"] = finesse_from_reflectivity(c.reflectivity);
  j["fsr_mhz"] = rad_s_to_mhz(c.free_spectral_range());
  j["lossless_coupler"] = c.lossless_coupler();
  j["gain_coupling"] = c.coupling == GainCoupling::Full ? "full" : "phase_only";
  return j;
}

json tune_json(const TuneResult& t) {
  json j;
  j["amplitude_rad_s"] = t.amplitude;
  j["width_fwhm_mhz"] = rad_s_to_mhz(2.0 * t.width);
  j["achieved_ng"] = t.achieved_ng;
  j["gain_factor"] = t.gain_factor ? json(*t.gain_factor) : json(nullptr);
  j["iterations"] = t.iterations;
  return j;
}

// Spectrum, its measured width and the closed-form report, written to `path`
// when one is given.
json spectrum_section(const ScenarioConfig& cfg, const RunOptions& opts, const CavityModel& cavity,
                      double omega0, RunResult& result) {
  const auto spec = spectrum(cavity, omega0, cfg.span(), static_cast<std::size_t>(cfg.scan.points));
  json j;
  LinewidthReport lw = linewidth_report(cavity, omega0, nullptr);
  try {
    lw = linewidth_report(cavity, omega0, &spec);
  } catch (const Error& e) {
    j["fwhm_error"] = std::string(to_string(e.code())) + ": " + e.what();
    lw.buildup_peak = peak_of(spec.buildup);
  }
  j["linewidth"] = to_json(lw);
  j["peak_transmission"] = number_or_null(peak_of(spec.transmission));
  j["above_threshold_samples"] = std::count(spec.above_threshold.begin(), spec.above_threshold.end(), 1);

  const auto path = output_of(cfg, opts);
  if (!path.empty()) {
    json meta;
    meta["config"] = cfg.to_json();
    meta["omega0_rad_s"] = omega0;
    write_table(spectrum_table(spec), format_of(cfg, opts), path, meta);
    result.files.push_back(path);
    j["file"] = path.string();
    log_line(opts, "wrote " + path.string());
  }
  return j;
}

std::string sweep_file_name(double gamma_sep, TableFormat fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "spectrum_gamma_%.6gmhz.%s", rad_s_to_mhz(gamma_sep), to_string(fmt));
  return buf;
}

}  // namespace

unsigned worker_threads() {
  if (const char* env = std::getenv("WLC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json to_json(const LinewidthReport& r) {
  json j;
  j["gamma_empty_mhz"] = rad_s_to_mhz(r.gamma_empty);
  j["beta"] = r.beta;
  j["gamma_lossy_mhz"] = rad_s_to_mhz(r.gamma_lossy);
  j["gamma_wlc_predicted_mhz"] = number_or_null(rad_s_to_mhz(r.gamma_wlc_predicted));
  j["gamma_wlc_ideal_mhz"] = r.gamma_wlc_ideal ? json(rad_s_to_mhz(*r.gamma_wlc_ideal)) : json(nullptr);
  j["gamma_measured_mhz"] = r.gamma_measured ? json(rad_s_to_mhz(*r.gamma_measured)) : json(nullptr);
  j["buildup_peak"] = number_or_null(r.buildup_peak);
  j["buildup_reduction"] = r.buildup_reduction;
  return j;
}

GainDoublet resolve_medium(const ScenarioConfig& cfg) {
  GainDoublet m = cfg.medium_template();
  if (!cfg.amplitude_given()) m = tune_gain_amplitude(m, cfg.target_ng()).apply(m);
  m.validate();
  return m;
}

CavityModel prepared_cavity(const ScenarioConfig& cfg, const std::optional<GainDoublet>& medium) {
  CavityModel c = cfg.bare_cavity();
  c.medium = medium;
  return snap_to_resonance(c, cfg.omega0());
}

double ripple_fraction(const CavityModel& cavity, double omega0, double half_window, int points) {
  require(points >= 2 && half_window > 0.0, "ripple_fraction: need a window and >= 2 points");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < points; ++i) {
    const double delta = half_window * (2.0 * i / (points - 1) - 1.0);
    const auto s = sample_at(cavity, omega0, delta);
    if (s.above_threshold) return kNaN;
    lo = std::min(lo, s.transmission);
    hi = std::max(hi, s.transmission);
  }
  return (hi - lo) / hi;
}

SweepResult run_sweep(const ScenarioConfig& cfg, unsigned threads) {
  SweepResult out;
  const double target = cfg.target_ng();
  out.baseline = resolve_medium(cfg);
  const double reference_amplitude = out.baseline.amplitude;
  require(reference_amplitude > 0.0, "sweep: baseline amplitude must be > 0");

  std::vector<double> separations;
  if (!cfg.sweep.separations_from_ng.empty()) {
    for (double ng : cfg.sweep.separations_from_ng) separations.push_back(separation_for_group_index(out.baseline, ng));
  } else {
    for (double mhz : cfg.sweep.separations_mhz) separations.push_back(mhz_to_rad_s(mhz));
  }

  out.entries.resize(separations.size());
  auto evaluate = [&](std::size_t i) {
    SweepEntry& e = out.entries[i];
    e.gamma_sep = separations[i];
    e.gamma_measured = kNaN;
    e.gamma_predicted = kNaN;
    e.ripple = kNaN;
    e.peak_transmission = kNaN;
    try {
      GainDoublet tmpl = out.baseline;
      tmpl.gamma_sep = e.gamma_sep;
      if (!cfg.sweep.retune_each) {
        e.medium = tmpl;
        e.gain_factor = 1.0;
      } else if (cfg.tune.width_scaling) {
        const auto t = tune_with_width_scaling(tmpl, target, reference_amplitude);
        e.medium = t.apply(tmpl);
        e.gain_factor = t.gain_factor.value_or(kNaN);
      } else {
        const auto t = tune_gain_amplitude(tmpl, target);
        e.medium = t.apply(tmpl);
        e.gain_factor = t.amplitude / reference_amplitude;
      }
      e.ng = dispersion_coefficients(e.medium).ng;

      const CavityModel cavity = prepared_cavity(cfg, e.medium);
      const double omega0 = cfg.omega0();
      const double span = std::max(cfg.span(), 2.5 * e.gamma_sep);
      e.spectrum = spectrum(cavity, omega0, span, static_cast<std::size_t>(cfg.scan.points));
      e.peak_transmission = peak_of(e.spectrum.transmission);
      e.gamma_predicted = linewidth_report(cavity, omega0).gamma_wlc_predicted;
      e.ripple = ripple_fraction(cavity, omega0, 0.5 * e.gamma_sep);
      e.gamma_measured = measure_fwhm(e.spectrum);
    } catch (const Error& err) {
      e.error = std::string(to_string(err.code())) + ": " + err.what();
    }
  };

  if (threads == 0) threads = worker_threads();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(out.entries.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < out.entries.size(); ++i) evaluate(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < out.entries.size(); i = next++) evaluate(i);
    });
  }
  return out;
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  RunResult result;
  json& report = result.report;
  report["scenario"] = to_string(cfg.scenario);
  report["version"] = version();
  const double omega0 = cfg.omega0();

  switch (cfg.scenario) {
    case Scenario::Empty: {
      const CavityModel cavity = prepared_cavity(cfg, std::nullopt);
      report["cavity"] = cavity_json(cavity);
      report["spectrum"] = spectrum_section(cfg, opts, cavity, omega0, result);
      if (cfg.has_medium()) {
        // Loss broadening the configured medium would add, without its gain.
        GainDoublet lossy = cfg.medium_template();
        lossy.amplitude = 0.0;
        report["with_lossy_medium"] = to_json(linewidth_report(prepared_cavity(cfg, lossy), omega0));
      }
      break;
    }
    case Scenario::Spectrum: {
      std::optional<GainDoublet> medium;
      if (cfg.has_medium()) medium = resolve_medium(cfg);
      const CavityModel cavity = prepared_cavity(cfg, medium);
      report["cavity"] = cavity_json(cavity);
      if (medium) report["medium"] = medium_json(*medium);
      report["spectrum"] = spectrum_section(cfg, opts, cavity, omega0, result);
      break;
    }
    case Scenario::Predict: {
      std::optional<GainDoublet> medium;
      if (cfg.has_medium()) medium = resolve_medium(cfg);
      const CavityModel cavity = prepared_cavity(cfg, medium);
      report["cavity"] = cavity_json(cavity);
      if (medium) {
        report["medium"] = medium_json(*medium);
        report["required_n1"] = required_n1(cavity.length, medium->length, omega0);
        report["white_light_ng"] = white_light_group_index(cavity.length, medium->length);
      }
      report["linewidth"] = to_json(linewidth_report(cavity, omega0));
      break;
    }
    case Scenario::Tune: {
      require(cfg.has_medium(), "tune scenario needs a medium");
      const GainDoublet tmpl = cfg.medium_template();
      TuneResult t;
      if (cfg.tune.width_scaling) {
        if (!cfg.amplitude_given())
          fail(ErrorCode::ValidationError, "tune.width_scaling: needs medium.amplitude_rad_s or gain_db_at_line as the reference");
        t = tune_with_width_scaling(tmpl, cfg.target_ng(), tmpl.amplitude);
      } else {
        t = tune_gain_amplitude(tmpl, cfg.target_ng());
        if (cfg.amplitude_given() && tmpl.amplitude > 0.0) t.gain_factor = t.amplitude / tmpl.amplitude;
      }
      report["target_ng"] = cfg.target_ng();
      report["tune"] = tune_json(t);
      const GainDoublet medium = t.apply(tmpl);
      const CavityModel cavity = prepared_cavity(cfg, medium);
      report["cavity"] = cavity_json(cavity);
      report["medium"] = medium_json(medium);
      report["spectrum"] = spectrum_section(cfg, opts, cavity, omega0, result);
      break;
    }
    case Scenario::SweepSeparation: {
      const auto sweep = run_sweep(cfg, opts.threads);
      report["baseline"] = medium_json(sweep.baseline);
      report["target_ng"] = cfg.target_ng();
      report["retune_each"] = cfg.sweep.retune_each;
      report["width_scaling"] = cfg.tune.width_scaling;

      Table summary;
      summary.columns = {"gamma_sep_mhz", "ng", "gamma_pred_mhz", "gamma_meas_mhz",
                         "peak_transmission", "ripple_fraction", "gain_factor"};
      const auto dir = output_of(cfg, opts);
      const auto fmt = format_of(cfg, opts);
      if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) fail(ErrorCode::IoError, "cannot create output directory '" + dir.string() + "': " + ec.message());
      }
      json entries = json::array();
      for (const auto& e : sweep.entries) {
        json je;
        je["gamma_sep_mhz"] = rad_s_to_mhz(e.gamma_sep);
        je["ng"] = number_or_null(e.ng);
        je["gain_factor"] = number_or_null(e.gain_factor);
        je["gamma_pred_mhz"] = number_or_null(rad_s_to_mhz(e.gamma_predicted));
        je["gamma_meas_mhz"] = number_or_null(rad_s_to_mhz(e.gamma_measured));
        je["peak_transmission"] = number_or_null(e.peak_transmission);
        je["ripple_fraction"] = number_or_null(e.ripple);
        if (!e.error.empty()) {
          je["error"] = e.error;
          result.ok = false;
        }
        if (!dir.empty() && e.spectrum.size() > 0) {
          const auto path = dir / sweep_file_name(e.gamma_sep, fmt);
          json meta;
          meta["config"] = cfg.to_json();
          meta["gamma_sep_mhz"] = rad_s_to_mhz(e.gamma_sep);
          meta["amplitude_rad_s"] = e.medium.amplitude;
          meta["width_fwhm_mhz"] = rad_s_to_mhz(2.0 * e.medium.width);
          write_table(spectrum_table(e.spectrum), fmt, path, meta);
          result.files.push_back(path);
          je["file"] = path.string();
        }
        entries.push_back(std::move(je));
        summary.rows.push_back({rad_s_to_mhz(e.gamma_sep), e.ng, rad_s_to_mhz(e.gamma_predicted),
                                rad_s_to_mhz(e.gamma_measured), e.peak_transmission, e.ripple, e.gain_factor});
      }
      report["entries"] = std::move(entries);
      if (!dir.empty()) {
        const auto path = dir / (std::string("summary.") + to_string(fmt));
        json meta;
        meta["config"] = cfg.to_json();
        write_table(summary, fmt, path, meta);
        result.files.push_back(path);
        report["summary_file"] = path.string();
        log_line(opts, "wrote " + std::to_string(result.files.size()) + " files to " + dir.string());
      }
      break;
    }
    case Scenario::SelfTest: {
      const auto criteria = run_acceptance();
      json list = json::array();
      for (const auto& c : criteria) {
        list.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed},
                        {"detail", c.detail}, {"seconds", c.seconds}});
        if (!c.passed) result.ok = false;
        log_line(opts, format_criterion(c));
      }
      report["criteria"] = std::move(list);
      report["passed"] = result.ok;
      break;
    }
  }
  return result;
}

}  // namespace wlc
