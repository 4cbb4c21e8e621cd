#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wlc/config.hpp"
#include "wlc/linewidth.hpp"
#include "wlc/tuner.hpp"

namespace wlc {

struct RunOptions {
  std::filesystem::path output;  // file, or directory for sweeps; empty = no files
  std::optional<TableFormat> format;
  bool verbose = false;
  std::ostream* log = nullptr;
  unsigned threads = 0;  // 0: WLC_THREADS, else hardware concurrency
};

struct RunResult {
  nlohmann::json report;
  std::vector<std::filesystem::path> files;
  bool ok = true;  // false when a selftest criterion or a sweep entry failed
};

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

/// Configured medium with its amplitude resolved: as given, or tuned to the
/// configured target group index.
GainDoublet resolve_medium(const ScenarioConfig& cfg);

/// Bare cavity from the config with `medium` inserted, snapped to omega0.
CavityModel prepared_cavity(const ScenarioConfig& cfg, const std::optional<GainDoublet>& medium);

/// (max - min) / max of the transmission over |detuning| <= half_window.
/// NaN if any sample in the window is above threshold.
double ripple_fraction(const CavityModel& cavity, double omega0, double half_window, int points = 2001);

struct SweepEntry {
  double gamma_sep = 0.0;  // rad/s
  GainDoublet medium;
  double ng = 0.0;
  double gamma_predicted = 0.0;  // rad/s
  double gamma_measured = 0.0;   // rad/s, NaN on failure
  double peak_transmission = 0.0;
  double ripple = 0.0;
  double gain_factor = 1.0;
  std::string error;
  TransmissionSpectrum spectrum;
};

struct SweepResult {
  GainDoublet baseline;
  std::vector<SweepEntry> entries;
};

/// Separations either as listed or reconstructed from group indices at fixed
/// baseline gain, each optionally retuned to the target group index.
SweepResult run_sweep(const ScenarioConfig& cfg, unsigned threads = 0);

/// WLC_THREADS if set and positive, otherwise the hardware concurrency.
unsigned worker_threads();

nlohmann::json to_json(const LinewidthReport& r);

}  // namespace wlc
