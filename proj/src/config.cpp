#include "wlc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "wlc/error.hpp"
#include "wlc/tuner.hpp"
#include "wlc/units.hpp"

namespace wlc {

using nlohmann::json;

namespace {

constexpr std::pair<Scenario, const char*> kScenarioNames[] = {
    {Scenario::Empty, "empty"},           {Scenario::Spectrum, "spectrum"},
    {Scenario::Predict, "predict"},       {Scenario::Tune, "tune"},
    {Scenario::SweepSeparation, "sweep_separation"}, {Scenario::SelfTest, "selftest"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

[[noreturn]] void parse_error(int line, const std::string& msg) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
  fail(ErrorCode::ValidationError, path + ": " + msg);
}

json typed_value(std::string_view raw, int line) {
  raw = trim(raw);
  if (raw.empty()) parse_error(line, "missing value");
  if (raw.size() >= 2 && raw.front() == '"') {
    if (raw.back() != '"') parse_error(line, "unterminated string");
    return std::string(raw.substr(1, raw.size() - 2));
  }
  if (raw == "true" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "no" || raw == "off") return false;
  if (auto v = parse_number(raw)) return *v;
  if (raw.find(',') != std::string_view::npos) {
    json list = json::array();
    std::size_t start = 0;
    while (start <= raw.size()) {
      const auto comma = raw.find(',', start);
      const auto item = raw.substr(start, comma == std::string_view::npos ? raw.npos : comma - start);
      auto v = parse_number(item);
      if (!v) parse_error(line, "list items must be numbers: '" + std::string(trim(item)) + "'");
      list.push_back(*v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return list;
  }
  return std::string(raw);
}

// Sectioned key = value text into the same tree shape the JSON input uses.
json parse_key_value(std::string_view text) {
  json root = json::object();
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (const auto hash = line.find(" #"); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.front() == '[') {
      if (line.back() != ']') parse_error(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) parse_error(line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) parse_error(line_no, "empty key");
    std::string path = section.empty() ? key : section + "." + key;
    const auto dot = path.find('.');
    json value = typed_value(line.substr(eq + 1), line_no);
    json* slot = &root;
    std::string leaf = path;
    if (dot != std::string::npos) {
      const std::string sec = path.substr(0, dot);
      leaf = path.substr(dot + 1);
      if (leaf.find('.') != std::string::npos) parse_error(line_no, "keys nest one level only: " + path);
      if (!root.contains(sec)) root[sec] = json::object();
      if (!root[sec].is_object()) parse_error(line_no, "'" + sec + "' is both a key and a section");
      slot = &root[sec];
    }
    if (slot->contains(leaf)) invalid(path, "duplicate key");
    (*slot)[leaf] = std::move(value);
  }
  return root;
}

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) invalid(path_, "expected a section");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : obj_.items())
      if (!ok.count(k)) invalid(where(k), "unknown key");
  }

  bool has(const char* key) const { return obj_.contains(key); }

  std::optional<double> number(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (!v.is_number()) invalid(where(key), "expected a number");
    return v.get<double>();
  }

  std::optional<bool> boolean(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (!v.is_boolean()) invalid(where(key), "expected true or false");
    return v.get<bool>();
  }

  std::optional<std::string> string(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (!v.is_string()) invalid(where(key), "expected a string");
    return v.get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (v.is_number()) return std::vector<double>{v.get<double>()};
    if (!v.is_array()) invalid(where(key), "expected a list of numbers");
    std::vector<double> out;
    for (const auto& item : v) {
      if (!item.is_number()) invalid(where(key), "expected a list of numbers");
      out.push_back(item.get<double>());
    }
    return out;
  }

  const json& raw(const char* key) const { return obj_.at(key); }
  std::string where(const std::string& key) const { return path_ + "." + key; }

 private:
  const json& obj_;
  std::string path_;
};

void positive(const std::string& path, double v) {
  if (!(std::isfinite(v) && v > 0.0)) invalid(path, "must be > 0");
}

ScenarioConfig from_tree(const json& root) {
  if (!root.is_object()) invalid("<root>", "expected an object");
  ScenarioConfig cfg;
  const json empty = json::object();
  auto section = [&](const char* name) -> const json& {
    return root.contains(name) ? root.at(name) : empty;
  };

  Reader top(root, "<root>");
  top.allow({"scenario", "cavity", "medium", "scan", "tune", "sweep", "output"});
  if (auto s = top.string("scenario")) {
    auto parsed = parse_scenario(*s);
    if (!parsed) invalid("scenario", "unknown scenario '" + *s + "'");
    cfg.scenario = *parsed;
  }

  {
    Reader r(section("cavity"), "cavity");
    r.allow({"length_m", "reflectivity", "finesse", "transmissivity", "lossless"});
    if (auto v = r.number("length_m")) cfg.cavity.length_m = *v;
    positive("cavity.length_m", cfg.cavity.length_m);
    cfg.cavity.reflectivity = r.number("reflectivity");
    cfg.cavity.finesse = r.number("finesse");
    if (cfg.cavity.reflectivity && cfg.cavity.finesse)
      invalid("cavity", "give exactly one of reflectivity and finesse");
    if (!cfg.cavity.reflectivity && !cfg.cavity.finesse) cfg.cavity.finesse = 100.0;
    if (cfg.cavity.reflectivity && !(*cfg.cavity.reflectivity > 0.0 && *cfg.cavity.reflectivity < 1.0))
      invalid("cavity.reflectivity", "must be in (0, 1)");
    if (cfg.cavity.finesse) positive("cavity.finesse", *cfg.cavity.finesse);
    cfg.cavity.transmissivity = r.number("transmissivity");
    const auto lossless = r.boolean("lossless");
    if (cfg.cavity.transmissivity && lossless.value_or(false))
      invalid("cavity", "give either transmissivity or lossless = true, not both");
    if (!cfg.cavity.transmissivity && lossless && !*lossless)
      invalid("cavity.lossless", "false requires an explicit transmissivity");
    if (cfg.cavity.transmissivity) positive("cavity.transmissivity", *cfg.cavity.transmissivity);
  }

  {
    Reader r(section("medium"), "medium");
    r.allow({"present", "length_m", "lambda_nm", "separation_mhz", "width_fwhm_mhz", "amplitude_rad_s",
             "gain_db_at_line", "loss_per_cm", "gain_coupling"});
    auto& m = cfg.medium;
    m.present = r.boolean("present");
    if (auto v = r.number("length_m")) m.length_m = *v;
    if (auto v = r.number("lambda_nm")) m.lambda_nm = *v;
    if (auto v = r.number("separation_mhz")) m.separation_mhz = *v;
    if (auto v = r.number("width_fwhm_mhz")) m.width_fwhm_mhz = *v;
    if (auto v = r.number("loss_per_cm")) m.loss_per_cm = *v;
    m.amplitude_rad_s = r.number("amplitude_rad_s");
    m.gain_db_at_line = r.number("gain_db_at_line");
    if (m.amplitude_rad_s && m.gain_db_at_line)
      invalid("medium", "give exactly one of amplitude_rad_s and gain_db_at_line");
    if (m.amplitude_rad_s && !(*m.amplitude_rad_s >= 0.0)) invalid("medium.amplitude_rad_s", "must be >= 0");
    if (m.gain_db_at_line && !(*m.gain_db_at_line >= 0.0)) invalid("medium.gain_db_at_line", "must be >= 0");
    if (auto c = r.string("gain_coupling")) {
      if (*c == "phase_only") m.coupling = GainCoupling::PhaseOnly;
      else if (*c == "full") m.coupling = GainCoupling::Full;
      else invalid("medium.gain_coupling", "expected phase_only or full");
    }
    positive("medium.length_m", m.length_m);
    positive("medium.lambda_nm", m.lambda_nm);
    positive("medium.separation_mhz", m.separation_mhz);
    positive("medium.width_fwhm_mhz", m.width_fwhm_mhz);
    if (!(m.loss_per_cm >= 0.0)) invalid("medium.loss_per_cm", "must be >= 0");
    if (m.length_m > cfg.cavity.length_m) invalid("medium.length_m", "exceeds cavity.length_m");
  }

  {
    Reader r(section("scan"), "scan");
    r.allow({"span_mhz", "points"});
    if (auto v = r.number("span_mhz")) cfg.scan.span_mhz = *v;
    positive("scan.span_mhz", cfg.scan.span_mhz);
    if (auto v = r.number("points")) {
      if (*v != std::floor(*v) || *v < 3 || *v > 1e7) invalid("scan.points", "must be an integer in [3, 1e7]");
      cfg.scan.points = static_cast<int>(*v);
    }
  }

  {
    Reader r(section("tune"), "tune");
    r.allow({"target_ng", "width_scaling"});
    if (r.has("target_ng")) {
      const auto& v = r.raw("target_ng");
      if (v.is_string() && v.get<std::string>() == "auto") cfg.tune.target_ng.reset();
      else if (v.is_number()) cfg.tune.target_ng = v.get<double>();
      else invalid("tune.target_ng", "expected a number or auto");
    }
    cfg.tune.width_scaling = r.boolean("width_scaling").value_or(false);
  }

  {
    Reader r(section("sweep"), "sweep");
    r.allow({"separations_mhz", "separations_from_ng", "retune_each"});
    if (auto v = r.numbers("separations_mhz")) cfg.sweep.separations_mhz = *v;
    if (auto v = r.numbers("separations_from_ng")) cfg.sweep.separations_from_ng = *v;
    cfg.sweep.retune_each = r.boolean("retune_each").value_or(true);
    for (double s : cfg.sweep.separations_mhz) positive("sweep.separations_mhz", s);
    for (double g : cfg.sweep.separations_from_ng)
      if (!(g < 1.0)) invalid("sweep.separations_from_ng", "group indices must be < 1");
    if (cfg.sweep.separations_mhz.empty() && cfg.sweep.separations_from_ng.empty())
      invalid("sweep", "no separations given");
  }

  {
    Reader r(section("output"), "output");
    r.allow({"path", "format"});
    if (auto p = r.string("path")) cfg.output.path = *p;
    if (auto f = r.string("format")) {
      auto parsed = parse_table_format(*f);
      if (!parsed) invalid("output.format", "expected csv or json");
      cfg.output.format = *parsed;
    }
  }

  // Cross-field checks that need the resolved numbers.
  if (cfg.cavity.transmissivity && cfg.reflectivity() + *cfg.cavity.transmissivity > 1.0 + 1e-12)
    invalid("cavity.transmissivity", "R + T exceeds 1");
  return cfg;
}

}  // namespace

const char* to_string(Scenario s) {
  for (const auto& [v, name] : kScenarioNames)
    if (v == s) return name;
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto& [v, n] : kScenarioNames)
    if (name == n) return v;
  if (name == "sweep") return Scenario::SweepSeparation;
  return std::nullopt;
}

const char* to_string(TableFormat f) { return f == TableFormat::Csv ? "csv" : "json"; }

std::optional<TableFormat> parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  return std::nullopt;
}

double ScenarioConfig::reflectivity() const {
  return cavity.reflectivity ? *cavity.reflectivity : reflectivity_from_finesse(cavity.finesse.value_or(100.0));
}

double ScenarioConfig::transmissivity() const {
  return cavity.transmissivity ? *cavity.transmissivity : 1.0 - reflectivity();
}

double ScenarioConfig::omega0() const { return angular_frequency_from_wavelength(medium.lambda_nm * 1e-9); }

double ScenarioConfig::target_ng() const {
  return tune.target_ng ? *tune.target_ng : white_light_group_index(cavity.length_m, medium.length_m);
}

double ScenarioConfig::span() const { return mhz_to_rad_s(scan.span_mhz); }

bool ScenarioConfig::has_medium() const {
  return medium.present.value_or(scenario != Scenario::Empty);
}

bool ScenarioConfig::amplitude_given() const {
  return medium.amplitude_rad_s.has_value() || medium.gain_db_at_line.has_value();
}

GainDoublet ScenarioConfig::medium_template() const {
  GainDoublet m;
  m.omega0 = omega0();
  m.gamma_sep = mhz_to_rad_s(medium.separation_mhz);
  m.width = 0.5 * mhz_to_rad_s(medium.width_fwhm_mhz);
  m.alpha = medium.loss_per_cm * 100.0;
  m.length = medium.length_m;
  if (medium.amplitude_rad_s) m.amplitude = *medium.amplitude_rad_s;
  else if (medium.gain_db_at_line) m.amplitude = amplitude_for_line_gain_db(m, *medium.gain_db_at_line);
  return m;
}

CavityModel ScenarioConfig::bare_cavity() const {
  CavityModel c;
  c.length = cavity.length_m;
  c.reflectivity = reflectivity();
  c.transmissivity = transmissivity();
  c.coupling = medium.coupling;
  return c;
}

nlohmann::json ScenarioConfig::to_json() const {
  json j;
  j["scenario"] = to_string(scenario);
  json& c = j["cavity"];
  c["length_m"] = cavity.length_m;
  if (cavity.reflectivity) c["reflectivity"] = *cavity.reflectivity;
  if (cavity.finesse) c["finesse"] = *cavity.finesse;
  if (cavity.transmissivity) c["transmissivity"] = *cavity.transmissivity;
  else c["lossless"] = true;
  json& m = j["medium"];
  if (medium.present) m["present"] = *medium.present;
  m["length_m"] = medium.length_m;
  m["lambda_nm"] = medium.lambda_nm;
  m["separation_mhz"] = medium.separation_mhz;
  m["width_fwhm_mhz"] = medium.width_fwhm_mhz;
  if (medium.amplitude_rad_s) m["amplitude_rad_s"] = *medium.amplitude_rad_s;
  if (medium.gain_db_at_line) m["gain_db_at_line"] = *medium.gain_db_at_line;
  m["loss_per_cm"] = medium.loss_per_cm;
  m["gain_coupling"] = medium.coupling == GainCoupling::Full ? "full" : "phase_only";
  j["scan"] = {{"span_mhz", scan.span_mhz}, {"points", scan.points}};
  j["tune"]["target_ng"] = tune.target_ng ? json(*tune.target_ng) : json("auto");
  j["tune"]["width_scaling"] = tune.width_scaling;
  j["sweep"]["separations_mhz"] = sweep.separations_mhz;
  if (!sweep.separations_from_ng.empty()) j["sweep"]["separations_from_ng"] = sweep.separations_from_ng;
  j["sweep"]["retune_each"] = sweep.retune_each;
  j["output"]["format"] = to_string(output.format);
  if (!output.path.empty()) j["output"]["path"] = output.path;
  return j;
}

ScenarioConfig load_config(std::string_view text) {
  const auto first = trim(text);
  if (!first.empty() && first.front() == '{') {
    json tree;
    try {
      tree = json::parse(first);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::ParseError, std::string("JSON: ") + e.what());
    }
    return from_tree(tree);
  }
  return from_tree(parse_key_value(text));
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

}  // namespace wlc
