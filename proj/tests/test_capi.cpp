// Exercises the shared library through its C interface only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "wlc/wlc.h"

using doctest::Approx;

namespace {

const double kTwoPi = 6.283185307179586;
const double kOmega0 = kTwoPi * 299792458.0 / 780e-9;

wlc_gain_doublet doublet(double amp) {
  wlc_gain_doublet m{};
  m.omega0 = kOmega0;
  m.gamma_sep = kTwoPi * 8e6;
  m.width = kTwoPi * 1e6;
  m.amplitude = amp;
  m.alpha = 0.05;
  m.length = 0.1;
  return m;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(wlc_version()) > 0);
  CHECK(std::string(wlc_status_name(WLC_ERR_NOT_ON_RESONANCE)) == "not on resonance");
}

TEST_CASE("medium functions") {
  const auto m = doublet(1.0);
  wlc_tune_result t{};
  REQUIRE(wlc_tune_gain_amplitude(&m, -9.0, &t) == WLC_OK);
  CHECK(t.amplitude == Approx(1.5748179494944937).epsilon(1e-12));
  CHECK(std::isnan(t.gain_factor));
  auto tuned = m;
  tuned.amplitude = t.amplitude;
  wlc_dispersion d{};
  REQUIRE(wlc_dispersion_coefficients(&tuned, &d) == WLC_OK);
  CHECK(d.ng == Approx(-9.0).epsilon(1e-12));
  double approx = 0;
  REQUIRE(wlc_n3_doublet_approx(d.n1, tuned.gamma_sep, &approx) == WLC_OK);
  CHECK(approx > 0.0);
  double re = 0, im = 0;
  REQUIRE(wlc_complex_index(&tuned, kOmega0 + 0.5 * tuned.gamma_sep, &re, &im) == WLC_OK);
  CHECK(im < 0.0);
  double db = 0;
  REQUIRE(wlc_single_pass_gain_db(&tuned, kOmega0, &db) == WLC_OK);
  CHECK(db == Approx(0.20632).epsilon(5e-5));
  wlc_tune_result w{};
  REQUIRE(wlc_tune_with_width_scaling(&m, -9.0, t.amplitude, &w) == WLC_OK);
  CHECK(w.gain_factor == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("errors carry a status and a message") {
  auto bad = doublet(1.0);
  bad.width = -1.0;
  double re, im;
  CHECK(wlc_complex_index(&bad, kOmega0, &re, &im) == WLC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(wlc_last_error()).find("width") != std::string::npos);
  CHECK(wlc_complex_index(nullptr, kOmega0, &re, &im) == WLC_ERR_INVALID_ARGUMENT);
  const auto m = doublet(1.0);
  wlc_tune_result t;
  CHECK(wlc_tune_gain_amplitude(&m, 3.0, &t) == WLC_ERR_INFEASIBLE);
  double x;
  CHECK(wlc_predict_wlc_linewidth(-9.0, 0.0, kOmega0, 0.1, 1.0, 1.0, 1e7, &x) == WLC_ERR_NO_POSITIVE_ROOT);
  CHECK(wlc_empty_linewidth(0.9, 1.0, &x) == WLC_OK);
  CHECK(std::string(wlc_last_error()).empty());
}

TEST_CASE("cavity and spectrum handles") {
  const auto m = doublet(1.5748179494944937);
  wlc_cavity* raw = nullptr;
  REQUIRE(wlc_cavity_create(1.0, 0.9690736781386199, 1.0 - 0.9690736781386199, &m, WLC_GAIN_PHASE_ONLY, &raw) ==
          WLC_OK);
  double full, trunc;
  CHECK(wlc_dephasing(raw, 1e6, kOmega0, &full, &trunc) == WLC_ERR_NOT_ON_RESONANCE);

  wlc_cavity* cav = nullptr;
  REQUIRE(wlc_cavity_snap(raw, kOmega0, &cav) == WLC_OK);
  wlc_cavity_destroy(raw);
  CHECK(std::abs(wlc_cavity_length(cav) - 1.0) < 1e-6);
  CHECK(wlc_dephasing(cav, 1e6, kOmega0, &full, &trunc) == WLC_OK);
  double tr = 0, bu = 0;
  REQUIRE(wlc_transmission_at(cav, kOmega0, &tr, &bu) == WLC_OK);
  CHECK(tr > 0.0);
  CHECK(tr <= 1.0);

  wlc_spectrum* s = nullptr;
  REQUIRE(wlc_spectrum_compute(cav, kOmega0, kTwoPi * 60e6, 1001, &s) == WLC_OK);
  REQUIRE(wlc_spectrum_size(s) == 1001);
  std::vector<double> det(1001), trans(1001), flag(1001);
  REQUIRE(wlc_spectrum_column(s, WLC_COL_DETUNING, det.data(), det.size()) == WLC_OK);
  REQUIRE(wlc_spectrum_column(s, WLC_COL_TRANSMISSION, trans.data(), trans.size()) == WLC_OK);
  REQUIRE(wlc_spectrum_column(s, WLC_COL_FLAG_OSCILLATION, flag.data(), flag.size()) == WLC_OK);
  CHECK(det[500] == 0.0);
  CHECK(flag[500] == 0.0);
  double fwhm = 0;
  REQUIRE(wlc_measure_fwhm(s, &fwhm) == WLC_OK);
  CHECK(fwhm > 0.0);

  const auto path = std::filesystem::temp_directory_path() / "wlc_capi_spectrum.json";
  CHECK(wlc_spectrum_write(s, path.c_str(), WLC_FORMAT_JSON) == WLC_OK);
  CHECK(std::filesystem::exists(path));
  CHECK(wlc_spectrum_write(s, "/nonexistent-dir/a/b.csv", WLC_FORMAT_CSV) == WLC_ERR_IO);
  wlc_spectrum_destroy(s);
  wlc_cavity_destroy(cav);
}

TEST_CASE("configs and scenarios") {
  wlc_config* cfg = nullptr;
  REQUIRE(wlc_config_default("empty", &cfg) == WLC_OK);
  CHECK(std::string(wlc_config_scenario(cfg)) == "empty");
  wlc_report* rep = nullptr;
  REQUIRE(wlc_run_scenario(cfg, nullptr, -1, 0, &rep) == WLC_OK);
  CHECK(wlc_report_ok(rep) == 1);
  CHECK(std::string(wlc_report_json(rep)).find("\"fsr_mhz\"") != std::string::npos);
  wlc_report_destroy(rep);
  CHECK(wlc_config_set_scenario(cfg, "nope") == WLC_ERR_VALIDATION);
  REQUIRE(wlc_config_set_scenario(cfg, "predict") == WLC_OK);
  REQUIRE(wlc_run_scenario(cfg, "", -1, 0, &rep) == WLC_OK);
  CHECK(std::string(wlc_report_json(rep)).find("gamma_wlc_predicted_mhz") != std::string::npos);
  wlc_report_destroy(rep);
  wlc_config_destroy(cfg);

  CHECK(wlc_config_load_text("[cavity]\nbogus = 1\n", &cfg) == WLC_ERR_VALIDATION);
  CHECK(wlc_config_load_text("[cavity\n", &cfg) == WLC_ERR_PARSE);
  CHECK(wlc_config_load_file("/nonexistent/config.ini", &cfg) == WLC_ERR_IO);
  REQUIRE(wlc_config_load_text("scenario = tune\n[tune]\ntarget_ng = -3\n", &cfg) == WLC_OK);
  REQUIRE(wlc_run_scenario(cfg, nullptr, -1, 0, &rep) == WLC_OK);
  CHECK(std::string(wlc_report_json(rep)).find("achieved_ng") != std::string::npos);
  wlc_report_destroy(rep);
  wlc_config_destroy(cfg);
}

TEST_CASE("null handles are tolerated by destructors and accessors") {
  wlc_cavity_destroy(nullptr);
  wlc_spectrum_destroy(nullptr);
  wlc_config_destroy(nullptr);
  wlc_report_destroy(nullptr);
  CHECK(wlc_spectrum_size(nullptr) == 0);
  CHECK(wlc_report_ok(nullptr) == 0);
  CHECK(std::isnan(wlc_cavity_length(nullptr)));
}
