#include "wlc/cavity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wlc/error.hpp"
#include "wlc/units.hpp"

namespace wlc {

namespace {

constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;
constexpr long double kSpeedOfLightL = 299'792'458.0L;

double medium_length(const CavityModel& c) { return c.medium ? c.medium->length : 0.0; }

// (w/c) l (Re n(w) - 1): the medium's excess phase over vacuum.
double medium_excess_phase(const CavityModel& c, double omega) {
  if (!c.medium) return 0.0;
  const double re = index_offset(*c.medium, omega - c.medium->omega0).real();
  return omega / kSpeedOfLight * c.medium->length * re;
}

long double absolute_phase(const CavityModel& c, double omega) {
  return static_cast<long double>(omega) * static_cast<long double>(c.length) / kSpeedOfLightL +
         static_cast<long double>(medium_excess_phase(c, omega));
}

long double wrap_to_order(long double phi) {
  return phi - kTwoPiL * std::nearbyint(phi / kTwoPiL);
}

double evaluate_transmission_denominator(double a, double phase) {
  return 1.0 + a * a - 2.0 * a * std::cos(phase);
}

}  // namespace

void CavityModel::validate() const {
  require(std::isfinite(length) && length > 0.0, "CavityModel.length must be > 0");
  require(reflectivity > 0.0 && reflectivity < 1.0, "CavityModel.reflectivity must be in (0, 1)");
  require(std::isfinite(transmissivity) && transmissivity > 0.0,
          "CavityModel.transmissivity must be > 0");
  require(reflectivity + transmissivity <= 1.0 + 1e-12, "CavityModel: R + T must not exceed 1");
  if (medium) {
    medium->validate();
    require(medium->length <= length, "medium length exceeds cavity length");
  }
}

bool CavityModel::lossless_coupler() const {
  return std::abs(transmissivity - (1.0 - reflectivity)) <= 4.0 * std::numeric_limits<double>::epsilon();
}

double CavityModel::free_spectral_range() const { return kTwoPi * kSpeedOfLight / length; }

double round_trip_phase(const CavityModel& cavity, double omega) {
  require(omega > 0.0, "round_trip_phase: omega must be > 0");
  if (!cavity.medium) return omega * cavity.length / kSpeedOfLight;
  const double ell = cavity.medium->length;
  const double re_n = complex_index(*cavity.medium, omega).real();
  return omega / kSpeedOfLight * ((cavity.length - ell) + ell * re_n);
}

double resonance_residual(const CavityModel& cavity, double omega) {
  require(omega > 0.0, "resonance_residual: omega must be > 0");
  return static_cast<double>(wrap_to_order(absolute_phase(cavity, omega)));
}

double resonance_tolerance(const CavityModel& cavity, double omega) {
  const double ulp = std::nextafter(cavity.length, std::numeric_limits<double>::infinity()) - cavity.length;
  return std::max(1e-9, 4.0 * omega / kSpeedOfLight * ulp);
}

bool is_resonant(const CavityModel& cavity, double omega) {
  return std::abs(resonance_residual(cavity, omega)) <= resonance_tolerance(cavity, omega);
}

double detuned_phase(const CavityModel& cavity, double omega0, double delta) {
  double d = delta * cavity.length / kSpeedOfLight;
  if (cavity.medium) {
    const auto& m = *cavity.medium;
    const double re_d = index_offset(m, omega0 + delta - m.omega0).real();
    const double re_0 = index_offset(m, omega0 - m.omega0).real();
    d += m.length / kSpeedOfLight * ((omega0 + delta) * re_d - omega0 * re_0);
  }
  return d;
}

Dephasing dephasing(const CavityModel& cavity, double delta, double omega0) {
  cavity.validate();
  require(std::abs(delta) < cavity.free_spectral_range(),
          "dephasing: |delta| must be below the free spectral range");
  const double residual = resonance_residual(cavity, omega0);
  if (std::abs(residual) > resonance_tolerance(cavity, omega0)) {
    std::ostringstream os;
    os << "omega0 is not a cavity resonance (phase residual " << residual << " rad)";
    fail(ErrorCode::NotOnResonance, os.str());
  }

  Dephasing out;
  out.full = detuned_phase(cavity, omega0, delta);
  double bracket = delta;
  if (cavity.medium) {
    const auto k = dispersion_coefficients(*cavity.medium);
    const double ratio = cavity.medium->length / cavity.length;
    bracket += ratio * (k.n1 * omega0 * delta + k.n3 * omega0 * delta * delta * delta);
  }
  out.truncated = cavity.length / kSpeedOfLight * bracket;
  return out;
}

double round_trip_amplitude(const CavityModel& cavity, double omega) {
  double a = cavity.reflectivity;
  if (cavity.medium) {
    const auto& m = *cavity.medium;
    a *= std::exp(-m.alpha * m.length);
    if (cavity.coupling == GainCoupling::Full) {
      const double im = index_offset(m, omega - m.omega0).imag();
      a *= std::exp(-(omega / kSpeedOfLight) * im * m.length);
    }
  }
  return a;
}

CavityResponse transmission_at(const CavityModel& cavity, double omega) {
  cavity.validate();
  require(omega > 0.0, "transmission_at: omega must be > 0");
  const double a = round_trip_amplitude(cavity, omega);
  if (a >= 1.0) {
    std::ostringstream os;
    os << "round-trip amplitude " << a << " >= 1: cavity is above oscillation threshold";
    fail(ErrorCode::OscillationThreshold, os.str());
  }
  const double phase = static_cast<double>(wrap_to_order(absolute_phase(cavity, omega)));
  const double denom = evaluate_transmission_denominator(a, phase);
  const double t = cavity.transmissivity;
  return {t * t / denom, t / denom};
}

SpectrumSample sample_at(const CavityModel& cavity, double omega0, double delta) {
  SpectrumSample s;
  s.detuning = delta;
  const double omega = omega0 + delta;
  s.phase = detuned_phase(cavity, omega0, delta);
  if (cavity.medium) {
    const auto off = index_offset(*cavity.medium, omega - cavity.medium->omega0);
    s.index_re = off.real();
    s.index_im = off.imag();
  }
  const double a = round_trip_amplitude(cavity, omega);
  if (a >= 1.0) {
    s.above_threshold = true;
    s.transmission = std::numeric_limits<double>::quiet_NaN();
    s.buildup = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double denom = evaluate_transmission_denominator(a, s.phase);
  const double t = cavity.transmissivity;
  s.transmission = t * t / denom;
  s.buildup = t / denom;
  return s;
}

void TransmissionSpectrum::push_back(const SpectrumSample& s) {
  detunings.push_back(s.detuning);
  transmission.push_back(s.transmission);
  buildup.push_back(s.buildup);
  phase.push_back(s.phase);
  index_re.push_back(s.index_re);
  index_im.push_back(s.index_im);
  above_threshold.push_back(s.above_threshold ? 1 : 0);
}

bool TransmissionSpectrum::any_above_threshold() const {
  for (auto f : above_threshold)
    if (f) return true;
  return false;
}

TransmissionSpectrum spectrum(const CavityModel& cavity, double omega0, double span,
                              std::size_t points) {
  cavity.validate();
  require(points >= 3, "spectrum: points must be >= 3");
  require(std::isfinite(span) && span > 0.0, "spectrum: span must be > 0");
  const double residual = resonance_residual(cavity, omega0);
  if (std::abs(residual) > resonance_tolerance(cavity, omega0)) {
    std::ostringstream os;
    os << "omega0 is not a cavity resonance (phase residual " << residual << " rad)";
    fail(ErrorCode::NotOnResonance, os.str());
  }

  TransmissionSpectrum out;
  out.source = TransmissionSpectrum::Source{cavity, omega0};
  const auto last = static_cast<long long>(points - 1);
  const double half_step = 0.5 * span / static_cast<double>(last);
  for (long long i = 0; i <= last; ++i) {
    // (2i - last) is antisymmetric about the center, so the grid is exactly
    // symmetric.
    const double delta = static_cast<double>(2 * i - last) * half_step;
    out.push_back(sample_at(cavity, omega0, delta));
  }
  return out;
}

CavityModel snap_to_resonance(const CavityModel& cavity, double omega_target) {
  cavity.validate();
  require(omega_target > 0.0, "snap_to_resonance: omega must be > 0");
  if (is_resonant(cavity, omega_target)) return cavity;

  const long double phi = absolute_phase(cavity, omega_target);
  const long double order = std::nearbyint(phi / kTwoPiL);
  const long double excess = static_cast<long double>(medium_excess_phase(cavity, omega_target));
  // w L' / c + excess = 2 pi N
  const long double exact =
      (kTwoPiL * order - excess) * kSpeedOfLightL / static_cast<long double>(omega_target);

  CavityModel best = cavity;
  best.length = static_cast<double>(exact);
  double best_residual = std::abs(resonance_residual(best, omega_target));
  for (double dir : {-1.0, 1.0}) {
    CavityModel trial = cavity;
    trial.length = std::nextafter(static_cast<double>(exact), dir * std::numeric_limits<double>::infinity());
    const double r = std::abs(resonance_residual(trial, omega_target));
    if (r < best_residual) {
      best = trial;
      best_residual = r;
    }
  }
  require(medium_length(best) <= best.length, "snapped cavity is shorter than its medium");
  return best;
}

double reflectivity_from_finesse(double finesse) {
  require(std::isfinite(finesse) && finesse > 0.0, "finesse must be > 0");
  // F x^2 + pi x - F = 0 with x = sqrt(R)
  const double pi = std::numbers::pi;
  const double x = 2.0 * finesse / (pi + std::sqrt(pi * pi + 4.0 * finesse * finesse));
  return x * x;
}

double finesse_from_reflectivity(double reflectivity) {
  require(reflectivity > 0.0 && reflectivity < 1.0, "reflectivity must be in (0, 1)");
  return std::numbers::pi * std::sqrt(reflectivity) / (1.0 - reflectivity);
}

}  // namespace wlc
