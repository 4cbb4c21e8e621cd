#include "wlc/tuner.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "wlc/detail/bisect.hpp"
#include "wlc/error.hpp"

namespace wlc {

namespace {

double group_index(const GainDoublet& m) { return dispersion_coefficients(m).ng; }

double ng_tolerance(double target) { return 1e-6 * std::max(1.0, std::abs(target)); }

void check_achieved(double achieved, double target) {
  if (std::abs(achieved - target) > ng_tolerance(target)) {
    std::ostringstream os;
    os << "tuning reached ng = " << achieved << " instead of " << target;
    fail(ErrorCode::Infeasible, os.str());
  }
}

}  // namespace

double required_n1(double cavity_length, double medium_length, double omega0) {
  require(medium_length > 0.0 && cavity_length >= medium_length, "required_n1: need L >= l > 0");
  require(omega0 > 0.0, "required_n1: omega0 must be > 0");
  return -(1.0 / omega0) * (cavity_length / medium_length);
}

double white_light_group_index(double cavity_length, double medium_length) {
  require(medium_length > 0.0 && cavity_length >= medium_length,
          "white_light_group_index: need L >= l > 0");
  return 1.0 - cavity_length / medium_length;
}

TuneResult tune_gain_amplitude(const GainDoublet& tmpl, double target_ng) {
  GainDoublet m = tmpl;
  m.amplitude = 0.0;
  m.validate();
  TuneResult r;
  r.width = m.width;
  r.iterations = 1;
  if (target_ng == 1.0) return r;

  const double slope = m.omega0 * n1_per_amplitude(m.gamma_sep, m.width);
  const double amplitude = slope != 0.0 ? (target_ng - 1.0) / slope : -1.0;
  if (!(amplitude > 0.0)) {
    std::ostringstream os;
    os << "ng = " << target_ng << " is unreachable with gain: separation " << m.gamma_sep
       << " rad/s vs 2W = " << 2.0 * m.width << " rad/s gives the wrong dispersion sign";
    fail(ErrorCode::Infeasible, os.str());
  }
  m.amplitude = amplitude;
  r.amplitude = amplitude;
  r.achieved_ng = group_index(m);
  check_achieved(r.achieved_ng, target_ng);
  return r;
}

TuneResult tune_with_width_scaling(const GainDoublet& tmpl, double target_ng,
                                   double reference_amplitude, double width_exponent) {
  require(reference_amplitude > 0.0, "tune_with_width_scaling: reference amplitude must be > 0");
  GainDoublet base = tmpl;
  base.amplitude = reference_amplitude;
  base.validate();

  auto doublet = [&](double k) {
    GainDoublet m = base;
    m.amplitude = k * reference_amplitude;
    m.width = std::pow(k, width_exponent) * base.width;
    return m;
  };
  auto mismatch = [&](double k) { return group_index(doublet(k)) - target_ng; };

  TuneResult r;
  if (target_ng == 1.0) {
    r.width = base.width;
    r.gain_factor = 0.0;
    return r;
  }

  if (std::abs(mismatch(1.0)) <= 1e-12 * std::max(1.0, std::abs(target_ng))) {
    r.amplitude = reference_amplitude;
    r.width = base.width;
    r.achieved_ng = group_index(base);
    r.gain_factor = 1.0;
    return r;
  }

  // Log-spaced scan for the first sign change, then bisection in log k.
  constexpr int kPerDecade = 24;
  constexpr double kLogLo = -6.0, kLogHi = 6.0;
  const int steps = static_cast<int>((kLogHi - kLogLo) * kPerDecade);
  double prev_log = kLogLo;
  double prev = mismatch(std::pow(10.0, prev_log));
  std::optional<std::pair<double, double>> bracket;
  for (int i = 1; i <= steps; ++i) {
    const double lg = kLogLo + (kLogHi - kLogLo) * i / steps;
    const double cur = mismatch(std::pow(10.0, lg));
    if ((cur <= 0.0) != (prev <= 0.0)) {
      bracket = {prev_log, lg};
      break;
    }
    prev_log = lg;
    prev = cur;
  }
  if (!bracket) {
    std::ostringstream os;
    os << "no gain factor in [1e-6, 1e6] reaches ng = " << target_ng
       << " (line width overtakes the separation first)";
    fail(ErrorCode::Infeasible, os.str());
  }

  auto in_log = [&](double lg) { return mismatch(std::pow(10.0, lg)); };
  // 1e-10 relative in k is ~4.3e-11 in log10 k.
  const auto root = detail::bisect(in_log, bracket->first, bracket->second, 4.3e-11, 0.0);
  const double k = std::pow(10.0, root.root);
  const GainDoublet solved = doublet(k);
  r.amplitude = solved.amplitude;
  r.width = solved.width;
  r.achieved_ng = group_index(solved);
  r.gain_factor = k;
  r.iterations = root.iterations;
  check_achieved(r.achieved_ng, target_ng);
  return r;
}

double separation_for_group_index(const GainDoublet& tmpl, double target_ng) {
  tmpl.validate();
  require(tmpl.amplitude > 0.0, "separation_for_group_index: amplitude must be > 0");
  require(target_ng < 1.0, "separation_for_group_index: target ng must be < 1");
  // n1(Gamma) has its minimum at Gamma = 2 sqrt(3) W and rises towards 0 beyond.
  const double lo = std::max(tmpl.gamma_sep, 2.0 * std::sqrt(3.0) * tmpl.width);
  auto mismatch = [&](double gamma) {
    GainDoublet m = tmpl;
    m.gamma_sep = gamma;
    return group_index(m) - target_ng;
  };
  if (mismatch(lo) > 0.0) {
    std::ostringstream os;
    os << "group index already exceeds " << target_ng << " at the starting separation";
    fail(ErrorCode::Infeasible, os.str());
  }
  double hi = 2.0 * lo;
  while (mismatch(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e6 * lo) fail(ErrorCode::Infeasible, "separation search did not bracket the target");
  }
  return detail::bisect(mismatch, lo, hi, 0.0, 1e-13).root;
}

}  // namespace wlc
