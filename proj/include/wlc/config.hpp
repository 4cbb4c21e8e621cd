#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wlc/cavity.hpp"

namespace wlc {

enum class Scenario { Empty, Spectrum, Predict, Tune, SweepSeparation, SelfTest };
enum class TableFormat { Csv, Json };

const char* to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
const char* to_string(TableFormat f);
std::optional<TableFormat> parse_table_format(std::string_view name);

// User-facing values are ordinary frequencies in MHz. Angular values are
// derived once, by the accessors below.

struct CavityConfig {
  double length_m = 1.0;
  std::optional<double> reflectivity;
  std::optional<double> finesse;
  std::optional<double> transmissivity;  // absent: lossless coupler, T = 1 - R
};

struct MediumConfig {
  std::optional<bool> present;  // absent: true except for the empty scenario
  double length_m = 0.1;
  double lambda_nm = 780.0;
  double separation_mhz = 8.0;
  double width_fwhm_mhz = 2.0;
  std::optional<double> amplitude_rad_s;
  std::optional<double> gain_db_at_line;
  double loss_per_cm = 0.0005;
  GainCoupling coupling = GainCoupling::PhaseOnly;
};

struct ScanConfig {
  double span_mhz = 60.0;
  int points = 4001;
};

struct TuneConfig {
  std::optional<double> target_ng;  // absent: 1 - L/l
  bool width_scaling = false;
};

struct SweepConfig {
  std::vector<double> separations_mhz{6.0, 8.0, 10.0, 12.0, 14.0};
  // When non-empty, separations are instead reconstructed as the values at
  // which the baseline doublet (gain held fixed) reaches these group indices.
  std::vector<double> separations_from_ng;
  bool retune_each = true;
};

struct OutputConfig {
  std::string path;
  TableFormat format = TableFormat::Csv;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::Spectrum;
  CavityConfig cavity;
  MediumConfig medium;
  ScanConfig scan;
  TuneConfig tune;
  SweepConfig sweep;
  OutputConfig output;

  double reflectivity() const;
  double transmissivity() const;
  double omega0() const;  // 2 pi c / lambda
  double target_ng() const;
  double span() const;  // rad/s

  /// Medium with separation, width and loss from the config and the amplitude
  /// as configured (explicit, from gain_db, or zero when neither is given).
  GainDoublet medium_template() const;
  bool amplitude_given() const;
  bool has_medium() const;

  /// Cavity without medium, at the configured length.
  CavityModel bare_cavity() const;

  /// Serialised with the same keys the loader accepts.
  nlohmann::json to_json() const;
};

/// Parses the sectioned key = value format or, when the first non-blank
/// character is '{', JSON. Throws Error(ParseError) on syntax errors and
/// Error(ValidationError) naming the key path on invalid content.
ScenarioConfig load_config(std::string_view text);
ScenarioConfig load_config_file(const std::filesystem::path& path);

}  // namespace wlc
