#pragma once

#include <numbers>

namespace wlc {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// External values are ordinary frequencies; everything internal is angular.
constexpr double mhz_to_rad_s(double mhz) { return kTwoPi * mhz * 1e6; }
constexpr double rad_s_to_mhz(double w) { return w / (kTwoPi * 1e6); }
constexpr double rad_s_to_hz(double w) { return w / kTwoPi; }

constexpr double angular_frequency_from_wavelength(double lambda_m) {
  return kTwoPi * kSpeedOfLight / lambda_m;
}

}  // namespace wlc
