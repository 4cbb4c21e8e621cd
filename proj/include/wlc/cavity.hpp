#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wlc/medium.hpp"

namespace wlc {

/// How the intracavity medium enters the round trip.
///
/// PhaseOnly: the doublet contributes Re n to the phase; only the residual
/// loss exp(-alpha l) scales the amplitude. Full: the doublet's gain
/// exp(-(w/c) Im n l) also multiplies the round-trip amplitude, which puts a
/// white-light-tuned doublet above threshold near its lines for typical
/// cavities.
enum class GainCoupling { PhaseOnly, Full };

struct CavityModel {
  double length = 1.0;          // round-trip path L, m
  double reflectivity = 0.0;    // R, geometric mean of coupler reflectivities
  double transmissivity = 0.0;  // T
  std::optional<GainDoublet> medium;
  GainCoupling coupling = GainCoupling::PhaseOnly;

  void validate() const;
  bool lossless_coupler() const;  // T == 1 - R
  double free_spectral_range() const;  // rad/s
};

/// Absolute round-trip phase (w/c)[(L - l) + l Re n(w)].
double round_trip_phase(const CavityModel& cavity, double omega);

/// phi(omega) - 2 pi N for the nearest order N. The large w L / c term is
/// carried in extended precision.
double resonance_residual(const CavityModel& cavity, double omega);

/// Tolerance used to decide that omega is a resonance: 1e-9 rad, or a few ulps
/// of L expressed as phase when that is larger.
double resonance_tolerance(const CavityModel& cavity, double omega);

bool is_resonant(const CavityModel& cavity, double omega);

/// phi(omega0 + delta) - phi(omega0), evaluated without subtracting the two
/// large absolute phases.
double detuned_phase(const CavityModel& cavity, double omega0, double delta);

struct Dephasing {
  double full = 0.0;       // from the complete index
  double truncated = 0.0;  // (L/c){d + (l/L)[n1 w0 d + n3 w0 d^3]}
};

/// Throws NotOnResonance unless omega0 is a cavity resonance.
Dephasing dephasing(const CavityModel& cavity, double delta, double omega0);

/// Round-trip amplitude factor a(w).
double round_trip_amplitude(const CavityModel& cavity, double omega);

struct CavityResponse {
  double transmission = 0.0;
  double buildup = 0.0;
};

/// I = T^2 / (1 + a^2 - 2 a cos phi), buildup = T / (same). Throws
/// OscillationThreshold when a >= 1.
CavityResponse transmission_at(const CavityModel& cavity, double omega);

struct SpectrumSample {
  double detuning = 0.0;
  double transmission = 0.0;  // NaN when above threshold
  double buildup = 0.0;       // NaN when above threshold
  double phase = 0.0;         // phi - 2 pi N
  double index_re = 0.0;      // Re n - 1
  double index_im = 0.0;      // Im n
  bool above_threshold = false;
};

/// One sample at omega0 + delta, with the phase referenced to the resonance
/// at omega0. Never throws on threshold; the sample is flagged instead.
SpectrumSample sample_at(const CavityModel& cavity, double omega0, double delta);

struct TransmissionSpectrum {
  std::vector<double> detunings;  // rad/s relative to omega0
  std::vector<double> transmission;
  std::vector<double> buildup;
  std::vector<double> phase;
  std::vector<double> index_re;
  std::vector<double> index_im;
  std::vector<std::uint8_t> above_threshold;

  /// Present when the spectrum was computed from a model, so that analysis can
  /// re-evaluate between grid points.
  struct Source {
    CavityModel cavity;
    double omega0;
  };
  std::optional<Source> source;

  std::size_t size() const { return detunings.size(); }
  void push_back(const SpectrumSample& s);
  bool any_above_threshold() const;
};

/// Uniform grid of `points` samples over [-span/2, span/2] around omega0.
TransmissionSpectrum spectrum(const CavityModel& cavity, double omega0, double span,
                              std::size_t points);

/// Adjusts L by the smallest amount that puts omega_target on resonance.
CavityModel snap_to_resonance(const CavityModel& cavity, double omega_target);

/// R from finesse F = pi sqrt(R) / (1 - R).
double reflectivity_from_finesse(double finesse);
double finesse_from_reflectivity(double reflectivity);

}  // namespace wlc
