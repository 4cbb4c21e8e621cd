#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "wlc/config.hpp"
#include "wlc/error.hpp"
#include "wlc/units.hpp"

using namespace wlc;
using doctest::Approx;

namespace {

Error error_of(std::string_view text) {
  try {
    (void)load_config(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected wlc::Error");
  return Error(ErrorCode::InvalidArgument, "");
}

}  // namespace

TEST_CASE("defaults") {
  const auto cfg = load_config("");
  CHECK(cfg.scenario == Scenario::Spectrum);
  CHECK(cfg.reflectivity() == Approx(reflectivity_from_finesse(100.0)).epsilon(1e-15));
  CHECK(cfg.transmissivity() == Approx(1.0 - cfg.reflectivity()).epsilon(1e-15));
  CHECK(cfg.target_ng() == Approx(-9.0).epsilon(1e-15));
  CHECK(cfg.has_medium());
  CHECK_FALSE(cfg.amplitude_given());
  const auto m = cfg.medium_template();
  CHECK(m.gamma_sep == Approx(mhz_to_rad_s(8.0)));
  CHECK(m.width == Approx(mhz_to_rad_s(1.0)));
  CHECK(m.alpha == Approx(0.05));
  CHECK(m.amplitude == 0.0);
}

TEST_CASE("sectioned key = value") {
  const auto cfg = load_config(R"(
# comment
scenario = sweep
; another comment
[cavity]
length_m = 2.0
finesse = 50
transmissivity = 0.05

[medium]
separation_mhz = 10   # trailing comment
width_fwhm_mhz = 1.5
gain_db_at_line = 1.2
gain_coupling = "full"

[scan]
span_mhz = 80
points = 801

[tune]
target_ng = auto
width_scaling = yes

[sweep]
separations_mhz = 6, 8, 10
retune_each = false

[output]
path = "out dir"
format = json
)");
  CHECK(cfg.scenario == Scenario::SweepSeparation);
  CHECK(cfg.cavity.length_m == 2.0);
  CHECK(cfg.reflectivity() == Approx(reflectivity_from_finesse(50.0)));
  CHECK(cfg.transmissivity() == 0.05);
  CHECK(cfg.medium.coupling == GainCoupling::Full);
  CHECK(cfg.amplitude_given());
  CHECK(cfg.medium_template().amplitude > 0.0);
  CHECK(cfg.scan.points == 801);
  CHECK(cfg.span() == Approx(mhz_to_rad_s(80.0)));
  CHECK(cfg.target_ng() == Approx(1.0 - 2.0 / 0.1));
  CHECK(cfg.tune.width_scaling);
  CHECK(cfg.sweep.separations_mhz == std::vector<double>{6, 8, 10});
  CHECK_FALSE(cfg.sweep.retune_each);
  CHECK(cfg.output.path == "out dir");
  CHECK(cfg.output.format == TableFormat::Json);
}

TEST_CASE("dotted keys and JSON are equivalent") {
  const auto a = load_config("scenario = tune\ncavity.reflectivity = 0.97\nmedium.amplitude_rad_s = 1.5\n");
  const auto b = load_config(R"({"scenario": "tune", "cavity": {"reflectivity": 0.97},
                                 "medium": {"amplitude_rad_s": 1.5}})");
  CHECK(a.to_json() == b.to_json());
  CHECK(a.reflectivity() == 0.97);
}

TEST_CASE("to_json round trips through the loader") {
  const auto a = load_config("scenario = sweep\n[sweep]\nseparations_from_ng = -1.95, 0.42\n[tune]\ntarget_ng = -4\n");
  const auto b = load_config(a.to_json().dump());
  CHECK(a.to_json() == b.to_json());
  CHECK(b.target_ng() == -4.0);
  CHECK(b.sweep.separations_from_ng.size() == 2);
}

TEST_CASE("empty scenario has no medium unless asked") {
  CHECK_FALSE(load_config("scenario = empty").has_medium());
  CHECK(load_config("scenario = empty\nmedium.present = true").has_medium());
  CHECK_FALSE(load_config("medium.present = false").has_medium());
}

TEST_CASE("validation errors name the key path") {
  auto e = error_of("[cavity]\ncolour = 3\n");
  CHECK(e.code() == ErrorCode::ValidationError);
  CHECK(std::string(e.what()).find("cavity.colour") != std::string::npos);

  e = error_of("[medium]\nlength_m = -1\n");
  CHECK(e.code() == ErrorCode::ValidationError);
  CHECK(std::string(e.what()).find("medium.length_m") != std::string::npos);

  CHECK(error_of("scenario = bogus").code() == ErrorCode::ValidationError);
  CHECK(error_of("[cavity]\nreflectivity = 0.9\nfinesse = 10\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[cavity]\nreflectivity = 1.5\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[medium]\namplitude_rad_s = 1\ngain_db_at_line = 1\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[medium]\ngain_coupling = sideways\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[scan]\npoints = 2\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[scan]\nspan_mhz = \"wide\"\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[output]\nformat = xml\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[cavity]\nlength_m = 1\nlength_m = 2\n").code() == ErrorCode::ValidationError);
  CHECK(error_of("[sweep]\nseparations_mhz = 6, x\n").code() == ErrorCode::ParseError);
}

TEST_CASE("syntax errors") {
  CHECK(error_of("[cavity\nlength_m = 1\n").code() == ErrorCode::ParseError);
  CHECK(error_of("just words\n").code() == ErrorCode::ParseError);
  CHECK(error_of("{\"scenario\": ").code() == ErrorCode::ParseError);
  CHECK(error_of("a.b.c = 1\n").code() == ErrorCode::ParseError);
}

TEST_CASE("missing file") {
  try {
    (void)load_config_file(std::filesystem::temp_directory_path() / "wlc-no-such-config.ini");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("enum names") {
  CHECK(parse_scenario("sweep") == Scenario::SweepSeparation);
  CHECK(parse_scenario("sweep_separation") == Scenario::SweepSeparation);
  CHECK_FALSE(parse_scenario("nope").has_value());
  for (auto s : {Scenario::Empty, Scenario::Spectrum, Scenario::Predict, Scenario::Tune, Scenario::SweepSeparation,
                 Scenario::SelfTest})
    CHECK(parse_scenario(to_string(s)) == s);
  CHECK(parse_table_format("csv") == TableFormat::Csv);
  CHECK(parse_table_format(to_string(TableFormat::Json)) == TableFormat::Json);
}
