#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wlc/cavity.hpp"
#include "wlc/error.hpp"
#include "wlc/linewidth.hpp"
#include "wlc/units.hpp"

using namespace wlc;
using doctest::Approx;

namespace {

const double kOmega0 = angular_frequency_from_wavelength(780e-9);
const double kR = reflectivity_from_finesse(100.0);

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected wlc::Error");
  return ErrorCode::InvalidArgument;
}

// Lorentzian of FWHM `w` sampled without a source model.
TransmissionSpectrum lorentzian(double w, double span, std::size_t n, double centre = 0.0) {
  TransmissionSpectrum s;
  for (std::size_t i = 0; i < n; ++i) {
    SpectrumSample p;
    p.detuning = span * (static_cast<double>(i) / static_cast<double>(n - 1) - 0.5);
    const double x = (p.detuning - centre) / (0.5 * w);
    p.transmission = 1.0 / (1.0 + x * x);
    p.buildup = p.transmission;
    s.push_back(p);
  }
  return s;
}

}  // namespace

TEST_CASE("empty linewidth and its high-finesse limit") {
  const double g = empty_linewidth(kR, 1.0);
  CHECK(std::abs(g / familiar_linewidth(kR, 1.0) - 1.0) == Approx(4.1e-5).epsilon(0.02));
  CHECK(empty_linewidth(kR, 2.0) == Approx(0.5 * g).epsilon(1e-15));
  CHECK(loss_beta(kR, 1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(loss_beta(kR, 0.99) > loss_beta(kR, 0.995));
  CHECK_THROWS_AS((void)loss_beta(0.1, 0.1), Error);  // arcsin argument above 1
}

TEST_CASE("prediction without n3 is linear") {
  WlcLinewidthInputs in;
  in.ng = -4.0;
  in.omega0 = kOmega0;
  in.medium_length = 0.1;
  in.cavity_length = 1.0;
  in.beta = 1.16;
  in.gamma_empty = mhz_to_rad_s(3.0);
  const double expect = in.beta * in.gamma_empty / (1.0 + (in.ng - 1.0) * 0.1);
  CHECK(predict_wlc_linewidth(in) == Approx(expect).epsilon(1e-13));
  in.ng = -9.0;  // exact white-light point: no bandwidth limit left
  CHECK(code_of([&] { (void)predict_wlc_linewidth(in); }) == ErrorCode::NoPositiveRoot);
  in.n3 = -1e-30;
  CHECK(code_of([&] { (void)predict_wlc_linewidth(in); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("prediction satisfies the width relation") {
  WlcLinewidthInputs in;
  in.omega0 = kOmega0;
  in.medium_length = 0.1;
  in.cavity_length = 1.0;
  in.beta = 1.1591942548472971;
  in.gamma_empty = empty_linewidth(kR, 1.0);
  for (double ng : {-9.0, -8.0, -3.0, 1.0}) {
    for (double n3 : {1e-31, 3.277814079504118e-30, 1e-28}) {
      in.ng = ng;
      in.n3 = n3;
      const double x = predict_wlc_linewidth(in);
      CHECK(x > 0.0);
      CHECK(std::abs(wlc_relation_residual(in, x)) < 1e-12);
    }
  }
}

TEST_CASE("ideal width reduces to the cubic at ng = 1 - L/l") {
  const double gamma = mhz_to_rad_s(3.0);
  const double sep = mhz_to_rad_s(8.0);
  WlcLinewidthInputs in;
  in.ng = -9.0;
  in.omega0 = kOmega0;
  in.medium_length = 0.1;
  in.cavity_length = 1.0;
  in.beta = 1.0;
  in.gamma_empty = gamma;
  in.n3 = 2.0 * 10.0 / (kOmega0 * sep * sep);  // -2 n1 / Gamma^2 with n1 = -(L/l) / omega0
  CHECK(predict_wlc_linewidth(in) == Approx(ideal_wlc_linewidth(1.0, gamma, sep)).epsilon(1e-12));
}

TEST_CASE("measured FWHM of a sampled Lorentzian") {
  const double w = 3.0e6;
  CHECK(measure_fwhm(lorentzian(w, 10 * w, 20001)) == Approx(w).epsilon(1e-6));
  CHECK(measure_fwhm(lorentzian(w, 10 * w, 2001, 0.7 * w)) == Approx(w).epsilon(1e-4));
}

TEST_CASE("measured FWHM from a model spectrum is refined on the model") {
  CavityModel c;
  c.reflectivity = kR;
  c.transmissivity = 1.0 - kR;
  c = snap_to_resonance(c, kOmega0);
  const auto s = spectrum(c, kOmega0, mhz_to_rad_s(60.0), 401);
  // Each crossing is refined to 1e-3 of the 150 kHz grid step.
  CHECK(measure_fwhm(s) == Approx(empty_linewidth(c.reflectivity, c.length)).epsilon(1e-4));
  CHECK(std::abs(measure_fwhm(s) - empty_linewidth(c.reflectivity, c.length)) <= 2e-3 * (s.detunings[1] - s.detunings[0]));
}

TEST_CASE("measure_fwhm failure modes") {
  const double w = 3.0e6;
  // Peak on the boundary.
  CHECK(code_of([&] { (void)measure_fwhm(lorentzian(w, 10 * w, 201, 5 * w)); }) == ErrorCode::PeakAtEdge);
  // Never drops to half maximum.
  CHECK(code_of([&] { (void)measure_fwhm(lorentzian(w, 0.5 * w, 201)); }) == ErrorCode::NoHalfMaxCrossing);
  // Half maximum reached only outside the window on one side.
  CHECK(code_of([&] { (void)measure_fwhm(lorentzian(w, 4 * w, 201, 1.7 * w)); }) == ErrorCode::PeakAtEdge);
  // Flagged samples inside the peak.
  auto s = lorentzian(w, 10 * w, 201);
  s.above_threshold[101] = 1;
  CHECK(code_of([&] { (void)measure_fwhm(s); }) == ErrorCode::OscillationThreshold);
  CHECK_THROWS_AS((void)measure_fwhm(lorentzian(w, 10 * w, 2)), Error);
}

TEST_CASE("build-up reduction") {
  CHECK(buildup_reduction(4.0, 3.0) == Approx(0.25));
  CHECK_THROWS_AS((void)buildup_reduction(0.0, 1.0), Error);
}

TEST_CASE("report for the empty cavity") {
  CavityModel c;
  c.reflectivity = kR;
  c.transmissivity = 1.0 - kR;
  const auto r = linewidth_report(c, kOmega0);
  CHECK(r.beta == 1.0);
  CHECK(r.gamma_lossy == r.gamma_empty);
  CHECK(r.buildup_reduction == 0.0);
  CHECK(r.buildup_peak == Approx(1.0 / (1.0 - kR)).epsilon(1e-12));
  CHECK_FALSE(r.gamma_measured.has_value());
}
