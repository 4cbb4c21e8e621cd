#pragma once

#include <optional>

#include "wlc/medium.hpp"

namespace wlc {

struct TuneResult {
  double amplitude = 0.0;  // solved M, rad/s
  double width = 0.0;      // HWHM after any rescaling, rad/s
  double achieved_ng = 1.0;
  std::optional<double> gain_factor;  // M / M_reference
  int iterations = 0;

  GainDoublet apply(GainDoublet tmpl) const {
    tmpl.amplitude = amplitude;
    tmpl.width = width;
    return tmpl;
  }
};

/// -(1/w0)(L/l): the slope that removes the first-order round-trip dephasing.
double required_n1(double cavity_length, double medium_length, double omega0);

/// 1 - L/l.
double white_light_group_index(double cavity_length, double medium_length);

/// Solves for M at the template's separation and width. Closed form, because
/// n1 is linear in M.
TuneResult tune_gain_amplitude(const GainDoublet& tmpl, double target_ng);

/// Scales the amplitude by k and the width by k^width_exponent relative to
/// (reference_amplitude, tmpl.width) and solves for k. The default exponent
/// grows the lines by the square root of the gain factor.
TuneResult tune_with_width_scaling(const GainDoublet& tmpl, double target_ng,
                                   double reference_amplitude, double width_exponent = 0.5);

/// Separation at which a doublet with the template's amplitude and width has
/// group index `target_ng`, searching upward from tmpl.gamma_sep where the
/// group index rises monotonically towards 1.
double separation_for_group_index(const GainDoublet& tmpl, double target_ng);

}  // namespace wlc
