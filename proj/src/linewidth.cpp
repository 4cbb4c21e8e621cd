#include "wlc/linewidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wlc/detail/bisect.hpp"
#include "wlc/error.hpp"
#include "wlc/units.hpp"

namespace wlc {

namespace {

double arcsin_half_width(double r) {
  return std::asin((1.0 - r) / (2.0 * std::sqrt(r)));
}

}  // namespace

double empty_linewidth(double reflectivity, double length) {
  require(reflectivity > 0.0 && reflectivity < 1.0, "empty_linewidth: R must be in (0, 1)");
  require(length > 0.0, "empty_linewidth: L must be > 0");
  return 4.0 * kSpeedOfLight / length * arcsin_half_width(reflectivity);
}

double familiar_linewidth(double reflectivity, double length) {
  require(length > 0.0, "familiar_linewidth: L must be > 0");
  return kTwoPi * (kSpeedOfLight / length) / finesse_from_reflectivity(reflectivity);
}

double loss_beta(double reflectivity, double rho) {
  require(reflectivity > 0.0 && reflectivity < 1.0, "loss_beta: R must be in (0, 1)");
  require(rho > 0.0 && rho <= 1.0, "loss_beta: rho must be in (0, 1]");
  const double r_rho = reflectivity * rho;
  // Beyond R rho ~ 0.17 the arcsin argument exceeds 1; the construction only
  // makes sense for a resolvable resonance.
  const double arg = (1.0 - r_rho) / (2.0 * std::sqrt(r_rho));
  require(arg <= 1.0, "loss_beta: R*rho too small for a half-maximum to exist");
  return std::asin(arg) / arcsin_half_width(reflectivity);
}

double predict_wlc_linewidth(const WlcLinewidthInputs& in) {
  require(in.n3 >= 0.0, "predict_wlc_linewidth: n3 must be >= 0");
  require(in.gamma_empty > 0.0, "predict_wlc_linewidth: gamma_empty must be > 0");
  require(in.beta > 0.0, "predict_wlc_linewidth: beta must be > 0");
  require(in.cavity_length > 0.0 && in.medium_length >= 0.0 && in.medium_length <= in.cavity_length,
          "predict_wlc_linewidth: need 0 <= l <= L");

  const double ratio = in.medium_length / in.cavity_length;
  const double cubic = in.n3 * in.omega0 * ratio;
  const double linear = 1.0 + (in.ng - 1.0) * ratio;
  const double target = in.beta * in.gamma_empty;

  if (cubic == 0.0) {
    if (linear <= 0.0) {
      std::ostringstream os;
      os << "no positive linewidth: n3 = 0 and 1 + (ng - 1) l/L = " << linear;
      fail(ErrorCode::NoPositiveRoot, os.str());
    }
    return target / linear;
  }

  auto f = [&](double x) { return (cubic * x * x + linear) * x - target; };
  const double ideal = std::cbrt(target / cubic);
  double hi = 10.0 * std::max(target, ideal);
  while (f(hi) < 0.0) hi *= 2.0;
  return detail::bisect(f, 0.0, hi, 0.0, 1e-14).root;
}

double wlc_relation_residual(const WlcLinewidthInputs& in, double gamma_prime) {
  const double ratio = in.medium_length / in.cavity_length;
  const double rhs =
      in.beta / (1.0 + ((in.ng - 1.0) + in.n3 * in.omega0 * gamma_prime * gamma_prime) * ratio);
  const double lhs = gamma_prime / in.gamma_empty;
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double ideal_wlc_linewidth(double beta, double gamma_empty, double gamma_sep) {
  require(beta > 0.0 && gamma_empty > 0.0 && gamma_sep > 0.0,
          "ideal_wlc_linewidth: arguments must be > 0");
  return std::cbrt(beta * gamma_empty * gamma_sep * gamma_sep / 2.0);
}

double measure_fwhm(const TransmissionSpectrum& spec) {
  const std::size_t n = spec.size();
  require(n >= 3 && spec.transmission.size() == n, "measure_fwhm: spectrum needs >= 3 samples");

  std::size_t peak = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = spec.transmission[i];
    if (!std::isfinite(t)) continue;
    if (peak == n || t > spec.transmission[peak]) peak = i;
  }
  require(peak < n, "measure_fwhm: spectrum has no finite samples");
  if (peak == 0 || peak == n - 1) fail(ErrorCode::PeakAtEdge, "transmission maximum lies on the grid boundary");

  const double half = 0.5 * spec.transmission[peak];
  std::size_t left = n, right = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(spec.transmission[i]) && spec.transmission[i] >= half) {
      left = std::min(left, i);
      right = std::max(right, i);
    }
  }
  bool falls_below = false;
  for (double t : spec.transmission)
    if (std::isfinite(t) && t < half) falls_below = true;
  if (!falls_below) fail(ErrorCode::NoHalfMaxCrossing, "transmission never falls below half maximum");
  if (left == 0 || right == n - 1)
    fail(ErrorCode::PeakAtEdge, "half-maximum crossing lies on the grid boundary; widen the span");

  for (std::size_t i = left - 1; i <= right + 1; ++i) {
    if (spec.above_threshold.size() == n && spec.above_threshold[i])
      fail(ErrorCode::OscillationThreshold, "above-threshold samples inside the half-maximum region");
  }

  const double step = (spec.detunings[n - 1] - spec.detunings[0]) / static_cast<double>(n - 1);
  auto crossing = [&](std::size_t below, std::size_t above) {
    const double x0 = spec.detunings[below];
    const double x1 = spec.detunings[above];
    if (spec.source) {
      const auto& src = *spec.source;
      auto g = [&](double d) { return sample_at(src.cavity, src.omega0, d).transmission - half; };
      return detail::bisect(g, x0, x1, 1e-3 * std::abs(step), 0.0).root;
    }
    const double t0 = spec.transmission[below];
    const double t1 = spec.transmission[above];
    return x0 + (half - t0) / (t1 - t0) * (x1 - x0);
  };

  return crossing(right + 1, right) - crossing(left - 1, left);
}

double buildup_reduction(double lossless_peak, double lossy_peak) {
  require(lossless_peak > 0.0 && lossy_peak > 0.0, "buildup_reduction: peaks must be > 0");
  return 1.0 - lossy_peak / lossless_peak;
}

LinewidthReport linewidth_report(const CavityModel& cavity, double omega0,
                                 const TransmissionSpectrum* spec) {
  cavity.validate();
  LinewidthReport r;
  const double refl = cavity.reflectivity;
  const double rho = cavity.medium ? std::exp(-cavity.medium->alpha * cavity.medium->length) : 1.0;
  r.gamma_empty = empty_linewidth(refl, cavity.length);
  r.beta = loss_beta(refl, rho);
  r.gamma_lossy = r.beta * r.gamma_empty;

  WlcLinewidthInputs in;
  in.omega0 = omega0;
  in.cavity_length = cavity.length;
  in.beta = r.beta;
  in.gamma_empty = r.gamma_empty;
  if (cavity.medium) {
    const auto k = dispersion_coefficients(*cavity.medium);
    in.ng = k.ng;
    // The approximation is negative for normal dispersion (Gamma < 2W); the
    // cubic term then has no bandwidth-limiting role.
    in.n3 = std::max(0.0, n3_doublet_approx(k.n1, cavity.medium->gamma_sep));
    in.medium_length = cavity.medium->length;
    r.gamma_wlc_ideal = ideal_wlc_linewidth(r.beta, r.gamma_empty, cavity.medium->gamma_sep);
  }
  try {
    r.gamma_wlc_predicted = predict_wlc_linewidth(in);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPositiveRoot) throw;
    r.gamma_wlc_predicted = std::numeric_limits<double>::quiet_NaN();
  }

  const double t = cavity.transmissivity;
  const double lossless = t / ((1.0 - refl) * (1.0 - refl));
  const double lossy = t / ((1.0 - refl * rho) * (1.0 - refl * rho));
  r.buildup_peak = lossy;
  r.buildup_reduction = buildup_reduction(lossless, lossy);

  if (spec) {
    r.gamma_measured = measure_fwhm(*spec);
    double peak = 0.0;
    for (double b : spec->buildup)
      if (std::isfinite(b)) peak = std::max(peak, b);
    r.buildup_peak = peak;
  }
  return r;
}

}  // namespace wlc
