// Frozen reference values, computed independently at 50-digit precision,
// plus the headline figures the model must reproduce.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wlc/cavity.hpp"
#include "wlc/config.hpp"
#include "wlc/linewidth.hpp"
#include "wlc/medium.hpp"
#include "wlc/scenario.hpp"
#include "wlc/tuner.hpp"
#include "wlc/units.hpp"

using namespace wlc;
using doctest::Approx;

namespace {

ScenarioConfig base() {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::Spectrum;
  return cfg;
}

GainDoublet tuned_medium() {
  const auto cfg = base();
  const auto tmpl = cfg.medium_template();
  return tune_gain_amplitude(tmpl, cfg.target_ng()).apply(tmpl);
}

}  // namespace

TEST_CASE("carrier frequency") {
  CHECK(base().omega0() == Approx(2.414937906806222e15).epsilon(1e-15));
}

TEST_CASE("tuned doublet: amplitude and dispersion coefficients") {
  const auto m = tuned_medium();
  CHECK(m.amplitude == Approx(1.5748179494944937).epsilon(1e-12));
  const auto d = dispersion_coefficients(m);
  CHECK(d.ng == Approx(-9.0).epsilon(1e-12));
  CHECK(d.n1 == Approx(-4.140893217923393e-15).epsilon(1e-12));
  CHECK(d.n3 == Approx(-3.8955705046378813e-30).epsilon(1e-10));
  CHECK(n3_doublet_approx(d.n1, m.gamma_sep) == Approx(3.277814079504118e-30).epsilon(1e-12));
}

TEST_CASE("tuned doublet: gain") {
  const auto m = tuned_medium();
  const double line = m.omega0 + 0.5 * m.gamma_sep;
  CHECK(complex_index(m, line).imag() == Approx(-2.5449606e-7).epsilon(1e-7));
  CHECK(single_pass_gain_db(m, m.omega0) == Approx(0.20632).epsilon(5e-5));
  CHECK(single_pass_gain_db(m, line) == Approx(1.78066).epsilon(5e-6));
  CHECK(amplitude_for_line_gain_db(m, 3.0) == Approx(m.amplitude * 3.0 / 1.78066).epsilon(1e-5));
}

TEST_CASE("exact n3 departs from the doublet approximation") {
  const double gamma = mhz_to_rad_s(8.0);
  auto ratio = [&](double w) {
    GainDoublet m;
    m.omega0 = base().omega0();
    m.gamma_sep = gamma;
    m.width = w;
    m.amplitude = 1.0;
    m.length = 0.1;
    const auto d = dispersion_coefficients(m);
    return d.n3 / n3_doublet_approx(d.n1, gamma);
  };
  CHECK(ratio(gamma / 4) == Approx(0.7467).epsilon(1e-3));
  CHECK(ratio(gamma / 8) == Approx(-1.188).epsilon(1e-3));
  CHECK(ratio(gamma / 16) == Approx(-1.786).epsilon(1e-3));
  CHECK(ratio(gamma / 32) == Approx(-1.946).epsilon(1e-3));
}

TEST_CASE("empty cavity") {
  const double r = reflectivity_from_finesse(100.0);
  CHECK(r == Approx(0.9690736781386199).epsilon(1e-15));
  CHECK(rad_s_to_mhz(empty_linewidth(r, 1.0)) == Approx(2.9980478783974748).epsilon(1e-13));
  CHECK(rad_s_to_mhz(familiar_linewidth(r, 1.0)) == Approx(2.99792458).epsilon(1e-12));
  CavityModel c;
  c.length = 1.0;
  c.reflectivity = r;
  c.transmissivity = 1.0 - r;
  CHECK(rad_s_to_mhz(c.free_spectral_range()) == Approx(299.792458).epsilon(1e-15));
  // Headline: FSR 299.79 MHz, linewidth 3 MHz.
  CHECK(std::abs(rad_s_to_mhz(c.free_spectral_range()) - 299.79) < 0.005);
  CHECK(std::abs(rad_s_to_mhz(empty_linewidth(r, 1.0)) - 3.0) < 0.01);
}

TEST_CASE("residual loss") {
  const auto cfg = base();
  const double r = cfg.reflectivity();
  const double rho = std::exp(-cfg.medium_template().alpha * cfg.medium.length_m);
  CHECK(rho == Approx(std::exp(-0.005)).epsilon(1e-15));
  const double beta = loss_beta(r, rho);
  CHECK(beta == Approx(1.1591942548472971).epsilon(1e-12));
  CHECK(std::abs(beta - 1.16) < 0.02);  // headline
  const double lossless = 1.0 / (1.0 - r);
  const double lossy = (1.0 - r) / ((1.0 - r * rho) * (1.0 - r * rho));
  CHECK(buildup_reduction(lossless, lossy) == Approx(0.2520521615366283).epsilon(1e-12));
}

TEST_CASE("ideal white-light linewidth") {
  CHECK(rad_s_to_mhz(ideal_wlc_linewidth(1.0, mhz_to_rad_s(1.0), mhz_to_rad_s(7.95))) ==
        Approx(3.161559943897057).epsilon(1e-13));
  CHECK(rad_s_to_mhz(ideal_wlc_linewidth(1.0, mhz_to_rad_s(3.0), mhz_to_rad_s(8.0))) ==
        Approx(4.578856970213327).epsilon(1e-13));
  // Headline: 3.16 MHz.
  CHECK(std::abs(rad_s_to_mhz(ideal_wlc_linewidth(1.0, mhz_to_rad_s(1.0), mhz_to_rad_s(7.95))) - 3.16) < 0.0158);
}

TEST_CASE("white-light condition") {
  CHECK(white_light_group_index(1.0, 0.1) == Approx(-9.0).epsilon(1e-15));
  const double w0 = base().omega0();
  CHECK(required_n1(1.0, 0.1, w0) == Approx(-10.0 / w0).epsilon(1e-15));
}

TEST_CASE("dephasing of the tuned cavity: complete index vs truncated expansion") {
  const auto cfg = base();
  const auto cavity = prepared_cavity(cfg, tuned_medium());
  const double w0 = cfg.omega0();
  auto ratio = [&](double mhz) {
    const auto d = dephasing(cavity, mhz_to_rad_s(mhz), w0);
    return d.full / d.truncated;
  };
  CHECK(ratio(0.5) == Approx(1.0025).epsilon(5e-4));
  CHECK(ratio(1.0) == Approx(1.0080).epsilon(5e-4));
  CHECK(ratio(2.0) == Approx(0.980).epsilon(1e-3));
  CHECK(std::abs(dephasing(cavity, mhz_to_rad_s(2.0), w0).full) == Approx(0.0061025).epsilon(1e-4));
}
