#pragma once

#include <optional>

#include "wlc/cavity.hpp"

namespace wlc {

// All linewidths are full widths at half maximum, in rad/s.

/// (4c/L) asin((1 - R) / (2 sqrt R)).
double empty_linewidth(double reflectivity, double length);

/// 2 pi FSR / F with F = pi sqrt(R) / (1 - R); the high-finesse limit of
/// empty_linewidth.
double familiar_linewidth(double reflectivity, double length);

/// Loss broadening factor: ratio of the lossy to the lossless arcsin widths.
double loss_beta(double reflectivity, double rho);

struct WlcLinewidthInputs {
  double ng = 1.0;
  double n3 = 0.0;  // s^3/rad^3, must be >= 0
  double omega0 = 0.0;
  double medium_length = 0.0;
  double cavity_length = 1.0;
  double beta = 1.0;
  double gamma_empty = 0.0;
};

/// Positive root of (n3 w0 l/L) x^3 + [1 + (ng - 1) l/L] x - beta gamma = 0.
/// Throws NoPositiveRoot when n3 == 0 and the linear coefficient is <= 0.
double predict_wlc_linewidth(const WlcLinewidthInputs& in);

/// Relative residual of gamma'/gamma = beta / [1 + {(ng-1) + n3 w0 gamma'^2} l/L].
double wlc_relation_residual(const WlcLinewidthInputs& in, double gamma_prime);

/// (beta gamma Gamma^2 / 2)^(1/3).
double ideal_wlc_linewidth(double beta, double gamma_empty, double gamma_sep);

/// Distance between the outermost half-maximum crossings of the transmission.
/// Crossings are refined by bisection on the source model when the spectrum
/// carries one, otherwise by linear interpolation.
double measure_fwhm(const TransmissionSpectrum& spec);

/// 1 - lossy / lossless.
double buildup_reduction(double lossless_peak, double lossy_peak);

struct LinewidthReport {
  double gamma_empty = 0.0;
  double beta = 1.0;
  double gamma_lossy = 0.0;
  double gamma_wlc_predicted = 0.0;
  std::optional<double> gamma_wlc_ideal;
  std::optional<double> gamma_measured;
  double buildup_peak = 0.0;
  double buildup_reduction = 0.0;
};

/// Closed-form figures for a cavity (and its medium, if any) around omega0,
/// plus the measured width of `spec` when supplied. The prediction uses the
/// doublet approximation for n3.
LinewidthReport linewidth_report(const CavityModel& cavity, double omega0,
                                 const TransmissionSpectrum* spec = nullptr);

}  // namespace wlc
