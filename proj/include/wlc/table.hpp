#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wlc/cavity.hpp"
#include "wlc/config.hpp"

namespace wlc {

/// Homogeneous numeric table. NaN marks a missing or failed value.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Columns: detuning_hz, transmission, buildup, phase_rad, re_n_minus_1,
/// im_n, flag_oscillation. Detunings are converted to ordinary Hz.
Table spectrum_table(const TransmissionSpectrum& spec);

/// Shortest representation that round-trips the double (at most 17
/// significant digits), locale independent. NaN is written as "nan".
std::string format_number(double v);

std::string to_csv(const Table& table);
nlohmann::json to_json(const Table& table, const nlohmann::json& metadata);

/// Writes CSV, or JSON with a metadata block (which gains the artifact
/// version). Throws InvalidArgument for an empty or ragged table and
/// IoError when the file cannot be written.
void write_table(const Table& table, TableFormat format, const std::filesystem::path& path,
                 const nlohmann::json& metadata = nlohmann::json::object());

Table parse_csv(const std::string& text);
Table read_csv(const std::filesystem::path& path);

const char* version();

}  // namespace wlc
