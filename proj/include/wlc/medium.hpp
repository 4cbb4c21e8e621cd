#pragma once

#include <complex>

namespace wlc {

/// Two equal Lorentzian gain lines at omega0 +/- gamma_sep/2.
///
/// Convention: the field propagates as exp(i(n*omega*z/c - omega*t)), so a
/// negative imaginary index is gain. All rates are angular (rad/s).
struct GainDoublet {
  double omega0 = 0.0;     // midpoint of the lines, rad/s
  double gamma_sep = 0.0;  // line separation, rad/s
  double width = 0.0;      // HWHM of each line, rad/s
  double amplitude = 0.0;  // Lorentzian strength M, rad/s
  double alpha = 0.0;      // residual amplitude loss, 1/m
  double length = 0.0;     // m

  /// Throws Error(InvalidArgument) naming the offending field.
  void validate() const;
};

struct DispersionCoefficients {
  double n1 = 0.0;  // s/rad
  double n2 = 0.0;  // s^2/rad^2
  double n3 = 0.0;  // s^3/rad^3, one sixth of the third derivative
  double ng = 1.0;
};

/// n(omega) - 1 evaluated at omega0 + detuning. Working in detuning keeps the
/// odd/even symmetry of the doublet exact in floating point.
std::complex<double> index_offset(const GainDoublet& medium, double detuning);

std::complex<double> complex_index(const GainDoublet& medium, double omega);

/// k-th derivative of n(omega) at omega0, from the closed form
/// d^k/dw^k 1/(w - w_s + iW) = (-1)^k k! (w - w_s + iW)^-(k+1).
std::complex<double> index_derivative(const GainDoublet& medium, int order);

DispersionCoefficients dispersion_coefficients(const GainDoublet& medium);

/// dn1/dM for a doublet with the given separation and width. n1 is linear in
/// the amplitude, which is what makes the gain tuning closed form.
double n1_per_amplitude(double gamma_sep, double width);

/// -2 n1 / Gamma^2. Only an order-of-magnitude estimate for a Lorentzian
/// doublet: the exact coefficient tends to 4 n1 / Gamma^2 as W/Gamma -> 0.
double n3_doublet_approx(double n1, double gamma_sep);

/// Single-pass intensity gain in dB (positive = amplification), excluding the
/// residual loss alpha.
double single_pass_gain_db(const GainDoublet& medium, double omega);

/// Amplitude M that gives `gain_db` of single-pass gain at the upper line
/// center, holding every other field of the template fixed.
double amplitude_for_line_gain_db(const GainDoublet& tmpl, double gain_db);

}  // namespace wlc
