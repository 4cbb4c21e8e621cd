#include "wlc/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wlc/error.hpp"
#include "wlc/units.hpp"

namespace wlc {

namespace {

void check_shape(const Table& table) {
  require(!table.columns.empty(), "table has no columns");
  require(!table.rows.empty(), "table has no rows");
  for (const auto& row : table.rows)
    require(row.size() == table.columns.size(), "table rows differ in length from the header");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace

const char* version() { return WLC_VERSION_STRING; }

Table spectrum_table(const TransmissionSpectrum& spec) {
  Table t;
  t.columns = {"detuning_hz", "transmission", "buildup", "phase_rad", "re_n_minus_1", "im_n", "flag_oscillation"};
  t.rows.reserve(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    t.rows.push_back({rad_s_to_hz(spec.detunings[i]), spec.transmission[i], spec.buildup[i], spec.phase[i],
                      spec.index_re[i], spec.index_im[i], spec.above_threshold[i] ? 1.0 : 0.0});
  }
  return t;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string to_csv(const Table& table) {
  check_shape(table);
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Table& table, const nlohmann::json& metadata) {
  check_shape(table);
  nlohmann::json j;
  j["metadata"] = metadata.is_object() ? metadata : nlohmann::json::object();
  j["metadata"]["version"] = version();
  auto& samples = j["samples"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json s = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::isfinite(row[c])) s[table.columns[c]] = row[c];
      else s[table.columns[c]] = nullptr;
    }
    samples.push_back(std::move(s));
  }
  return j;
}

void write_table(const Table& table, TableFormat format, const std::filesystem::path& path,
                 const nlohmann::json& metadata) {
  if (format == TableFormat::Csv) write_file(path, to_csv(table));
  else write_file(path, to_json(table, metadata).dump(2) + "\n");
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      out.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (t.columns.empty()) {
      t.columns = std::move(cells);
      continue;
    }
    if (cells.size() != t.columns.size())
      fail(ErrorCode::ParseError, "CSV line " + std::to_string(line_no) + ": wrong number of fields");
    std::vector<double> row;
    for (const auto& cell : cells) {
      if (cell == "nan") {
        row.push_back(std::nan(""));
        continue;
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        fail(ErrorCode::ParseError, "CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace wlc
