#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wlc/cavity.hpp"
#include "wlc/error.hpp"
#include "wlc/units.hpp"

using namespace wlc;
using doctest::Approx;

namespace {

const double kOmega0 = angular_frequency_from_wavelength(780e-9);

CavityModel bare(double finesse = 100.0) {
  CavityModel c;
  c.length = 1.0;
  c.reflectivity = reflectivity_from_finesse(finesse);
  c.transmissivity = 1.0 - c.reflectivity;
  return c;
}

GainDoublet medium(double amp) {
  GainDoublet m;
  m.omega0 = kOmega0;
  m.gamma_sep = mhz_to_rad_s(8.0);
  m.width = mhz_to_rad_s(1.0);
  m.amplitude = amp;
  m.length = 0.1;
  return m;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected wlc::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("finesse round trip") {
  for (double f : {3.0, 30.0, 100.0, 1e4}) {
    CHECK(finesse_from_reflectivity(reflectivity_from_finesse(f)) == Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("validation") {
  auto c = bare();
  c.reflectivity = 1.0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidArgument);
  c = bare();
  c.transmissivity = 0.5;  // T > 1 - R
  CHECK_THROWS_AS(c.validate(), Error);
  c = bare();
  c.length = 0.05;
  c.medium = medium(1.0);  // medium longer than the cavity
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(bare().lossless_coupler());
}

TEST_CASE("snapping puts the carrier on resonance with a minimal length change") {
  auto c = bare();
  c.medium = medium(1.57);
  CHECK_FALSE(is_resonant(c, kOmega0));
  const auto s = snap_to_resonance(c, kOmega0);
  CHECK(is_resonant(s, kOmega0));
  CHECK(std::abs(resonance_residual(s, kOmega0)) <= resonance_tolerance(s, kOmega0));
  CHECK(std::abs(s.length - c.length) < 780e-9);
}

TEST_CASE("detuned phase of the empty cavity is delta L / c") {
  const auto c = snap_to_resonance(bare(), kOmega0);
  for (double mhz : {-20.0, -1.0, 0.5, 7.0}) {
    const double d = mhz_to_rad_s(mhz);
    CHECK(detuned_phase(c, kOmega0, d) == Approx(d * c.length / kSpeedOfLight).epsilon(1e-9));
  }
}

TEST_CASE("dephasing requires a resonance and an in-range detuning") {
  auto c = bare();
  c.medium = medium(1.57);
  CHECK(code_of([&] { (void)dephasing(c, 1e6, kOmega0); }) == ErrorCode::NotOnResonance);
  const auto s = snap_to_resonance(c, kOmega0);
  CHECK_NOTHROW((void)dephasing(s, 1e6, kOmega0));
  CHECK_THROWS_AS((void)dephasing(s, 2.0 * s.free_spectral_range(), kOmega0), Error);
  const auto d = dephasing(s, 1e6, kOmega0);
  CHECK(d.full == Approx(detuned_phase(s, kOmega0, 1e6)).epsilon(1e-12));
}

TEST_CASE("lossless empty cavity transmits fully on resonance") {
  const auto c = snap_to_resonance(bare(), kOmega0);
  const auto r = transmission_at(c, kOmega0);
  CHECK(r.transmission == Approx(1.0).epsilon(1e-12));
  CHECK(r.buildup == Approx(1.0 / c.transmissivity).epsilon(1e-12));
  // Off resonance by half an FSR: minimum transmission.
  const auto off = transmission_at(c, kOmega0 + 0.5 * c.free_spectral_range());
  const double R = c.reflectivity;
  CHECK(off.transmission == Approx(std::pow((1 - R) / (1 + R), 2)).epsilon(1e-9));
}

TEST_CASE("round-trip amplitude and coupling modes") {
  auto c = bare();
  c.medium = medium(1.57);
  c.medium->alpha = 0.05;
  const double rho = std::exp(-0.005);
  CHECK(round_trip_amplitude(c, kOmega0) == Approx(c.reflectivity * rho).epsilon(1e-14));
  c.coupling = GainCoupling::Full;
  CHECK(round_trip_amplitude(c, kOmega0) > c.reflectivity * rho);
}

TEST_CASE("above threshold: transmission_at throws, sample_at flags") {
  auto c = bare(1000.0);
  c.medium = medium(20.0);
  c.coupling = GainCoupling::Full;
  c = snap_to_resonance(c, kOmega0);
  const double line = 0.5 * c.medium->gamma_sep;
  REQUIRE(round_trip_amplitude(c, kOmega0 + line) >= 1.0);
  CHECK(code_of([&] { (void)transmission_at(c, kOmega0 + line); }) == ErrorCode::OscillationThreshold);
  const auto s = sample_at(c, kOmega0, line);
  CHECK(s.above_threshold);
  CHECK(std::isnan(s.transmission));
  CHECK(std::isnan(s.buildup));
}

TEST_CASE("spectrum grid is symmetric and includes zero") {
  auto c = bare();
  c.medium = medium(1.57);
  c = snap_to_resonance(c, kOmega0);
  const auto s = spectrum(c, kOmega0, mhz_to_rad_s(60.0), 401);
  REQUIRE(s.size() == 401);
  CHECK(s.detunings[200] == 0.0);
  CHECK(s.detunings.front() == Approx(-mhz_to_rad_s(30.0)).epsilon(1e-15));
  for (std::size_t i = 0; i < 200; ++i) {
    CHECK(s.detunings[i] == -s.detunings[400 - i]);
    // Only the small even term delta (Re n - 1) l / c breaks the symmetry.
    CHECK(s.transmission[i] == Approx(s.transmission[400 - i]).epsilon(1e-5));
  }
  CHECK(s.source.has_value());
  CHECK_FALSE(s.any_above_threshold());
  CHECK(s.phase[200] == Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(spectrum(c, kOmega0, 0.0, 401), Error);
  CHECK_THROWS_AS(spectrum(c, kOmega0, 1e6, 1), Error);
}
