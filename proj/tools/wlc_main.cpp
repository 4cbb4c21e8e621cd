// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wlc/wlc.h"

namespace {

enum Exit { kOk = 0, kScenarioError = 1, kConfigError = 2, kSelftestFailed = 3 };

struct Options {
  std::string config;
  std::string output;
  std::string format;
  bool verbose = false;
};

bool is_config_status(wlc_status s) {
  return s == WLC_ERR_PARSE || s == WLC_ERR_VALIDATION || s == WLC_ERR_IO;
}

int report_error(const char* stage, wlc_status s) {
  std::cerr << "wlc: " << stage << ": " << wlc_status_name(s) << ": " << wlc_last_error() << '\n';
  return s;
}

int run(const std::string& scenario, const Options& o) {
  wlc_config* raw = nullptr;
  wlc_status s = o.config.empty() ? wlc_config_default(scenario.c_str(), &raw)
                                  : wlc_config_load_file(o.config.c_str(), &raw);
  if (s != WLC_OK) {
    report_error("config", s);
    return kConfigError;
  }
  std::unique_ptr<wlc_config, decltype(&wlc_config_destroy)> cfg(raw, wlc_config_destroy);
  if ((s = wlc_config_set_scenario(cfg.get(), scenario.c_str())) != WLC_OK) {
    report_error("config", s);
    return kConfigError;
  }

  int format = -1;
  if (o.format == "csv") format = WLC_FORMAT_CSV;
  else if (o.format == "json") format = WLC_FORMAT_JSON;

  wlc_report* rep_raw = nullptr;
  s = wlc_run_scenario(cfg.get(), o.output.c_str(), format, o.verbose ? 1 : 0, &rep_raw);
  if (s != WLC_OK) {
    report_error(scenario.c_str(), s);
    return is_config_status(s) && s != WLC_ERR_IO ? kConfigError : kScenarioError;
  }
  std::unique_ptr<wlc_report, decltype(&wlc_report_destroy)> rep(rep_raw, wlc_report_destroy);

  const bool selftest = scenario == "selftest";
  if (selftest) {
    std::cout << wlc_report_text(rep.get());
    if (o.verbose) std::cout << wlc_report_json(rep.get()) << '\n';
    std::cout << (wlc_report_ok(rep.get()) ? "selftest: all criteria passed\n"
                                           : "selftest: some criteria failed\n");
    return wlc_report_ok(rep.get()) ? kOk : kSelftestFailed;
  }
  std::cerr << wlc_report_text(rep.get());
  std::cout << wlc_report_json(rep.get()) << '\n';
  return wlc_report_ok(rep.get()) ? kOk : kScenarioError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"White-light cavity simulator"};
  app.set_version_flag("--version", std::string(wlc_version()));
  app.require_subcommand(1);

  Options opts;
  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs = {
      {"empty", "closed-form linewidth of the cavity without medium"},
      {"spectrum", "transmission spectrum around the resonance"},
      {"predict", "predicted and measured linewidths"},
      {"tune", "solve the gain amplitude for the white-light condition"},
      {"sweep_separation", "spectra over a set of line separations"},
      {"selftest", "run the acceptance suite"},
  };
  std::string chosen;
  for (const auto& sub : subs) {
    auto* cmd = app.add_subcommand(sub.name, sub.help);
    if (std::string(sub.name) == "sweep_separation") cmd->alias("sweep");
    auto* cfg = cmd->add_option("--config", opts.config, "scenario config (INI or JSON)");
    if (std::string(sub.name) != "selftest") cfg->check(CLI::ExistingFile);
    cmd->add_option("--output", opts.output, "output file, or directory for sweeps");
    cmd->add_option("--format", opts.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--verbose", opts.verbose, "progress on stderr");
    cmd->callback([&chosen, name = sub.name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  return run(chosen, opts);
}
