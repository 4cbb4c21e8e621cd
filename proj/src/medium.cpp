#include "wlc/medium.hpp"

#include <cmath>
#include <string>

#include "wlc/error.hpp"
#include "wlc/units.hpp"

namespace wlc {

namespace {

constexpr double kLn10 = 2.302585092994045684;

// Detuned pole positions of the two lines, relative to omega0.
std::complex<double> pole(const GainDoublet& m, double detuning, int side) {
  return {detuning - side * 0.5 * m.gamma_sep, m.width};
}

}  // namespace

void GainDoublet::validate() const {
  auto check = [](bool ok, const char* field, const char* rule) {
    if (!ok) fail(ErrorCode::InvalidArgument, std::string("GainDoublet.") + field + " must be " + rule);
  };
  check(std::isfinite(omega0) && omega0 > 0.0, "omega0", "> 0");
  check(std::isfinite(gamma_sep) && gamma_sep > 0.0, "gamma_sep", "> 0");
  check(std::isfinite(width) && width > 0.0, "width", "> 0");
  check(std::isfinite(amplitude) && amplitude >= 0.0, "amplitude", ">= 0");
  check(std::isfinite(alpha) && alpha >= 0.0, "alpha", ">= 0");
  check(std::isfinite(length) && length > 0.0, "length", "> 0");
}

std::complex<double> index_offset(const GainDoublet& m, double detuning) {
  return m.amplitude / pole(m, detuning, +1) + m.amplitude / pole(m, detuning, -1);
}

std::complex<double> complex_index(const GainDoublet& m, double omega) {
  require(omega > 0.0, "complex_index: omega must be > 0");
  return 1.0 + index_offset(m, omega - m.omega0);
}

std::complex<double> index_derivative(const GainDoublet& m, int order) {
  require(order >= 1, "index_derivative: order must be >= 1");
  double factorial = 1.0;
  for (int k = 2; k <= order; ++k) factorial *= k;
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  std::complex<double> sum = std::pow(pole(m, 0.0, +1), -(order + 1)) +
                             std::pow(pole(m, 0.0, -1), -(order + 1));
  return sign * factorial * m.amplitude * sum;
}

double n1_per_amplitude(double gamma_sep, double width) {
  const double a2 = 0.25 * gamma_sep * gamma_sep;
  const double w2 = width * width;
  return 2.0 * (w2 - a2) / ((a2 + w2) * (a2 + w2));
}

DispersionCoefficients dispersion_coefficients(const GainDoublet& m) {
  m.validate();
  const double a2 = 0.25 * m.gamma_sep * m.gamma_sep;
  const double w2 = m.width * m.width;
  const double s = a2 + w2;

  DispersionCoefficients d;
  d.n1 = m.amplitude * n1_per_amplitude(m.gamma_sep, m.width);
  // Even derivatives vanish for a symmetric doublet.
  d.n2 = 0.0;
  d.n3 = -2.0 * m.amplitude * (a2 * a2 - 6.0 * a2 * w2 + w2 * w2) / (s * s * s * s);
  d.ng = 1.0 + d.n1 * m.omega0;
  return d;
}

double n3_doublet_approx(double n1, double gamma_sep) {
  require(gamma_sep > 0.0, "n3_doublet_approx: gamma_sep must be > 0");
  return -2.0 * n1 / (gamma_sep * gamma_sep);
}

double single_pass_gain_db(const GainDoublet& m, double omega) {
  m.validate();
  const double im = index_offset(m, omega - m.omega0).imag();
  // 10 log10(exp(-2 (w/c) Im n l))
  return -2.0 * (omega / kSpeedOfLight) * im * m.length * 10.0 / kLn10;
}

double amplitude_for_line_gain_db(const GainDoublet& tmpl, double gain_db) {
  GainDoublet unit = tmpl;
  unit.amplitude = 1.0;
  unit.validate();
  require(gain_db >= 0.0, "gain_db_at_line must be >= 0");
  const double per_unit = single_pass_gain_db(unit, unit.omega0 + 0.5 * unit.gamma_sep);
  return gain_db / per_unit;
}

}  // namespace wlc
