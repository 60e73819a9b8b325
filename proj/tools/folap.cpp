#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "folap/runner.hpp"

#ifndef FOLAP_VERSION
#define FOLAP_VERSION "0.0.0"
#endif

int main(int argc, char** argv) {
  CLI::App app{"experiments for nonlocal Dirichlet problems with Orlicz growth"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* cmd_run = app.add_subcommand("run", "run the experiments from a JSON config");
  cmd_run->add_option("config", config_path, "path to the JSON config")->required();
  CLI::App* cmd_young =
      app.add_subcommand("young-report", "growth diagnostics for the configured family");
  cmd_young->add_option("config", config_path, "path to the JSON config")->required();
  CLI::App* cmd_version = app.add_subcommand("version", "print the tool version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_version->parsed()) {
      std::printf("folap %s\n", FOLAP_VERSION);
      return 0;
    }
    folap::RunConfig cfg = folap::load_config(config_path);
    if (cmd_young->parsed()) {
      std::fputs(folap::young_report_json(cfg).c_str(), stdout);
      return 0;
    }
    folap::RunSummary summary = folap::run_all(cfg);
    for (const folap::ExperimentResult& r : summary.results) {
      if (r.error.empty())
        std::printf("%-20s %-13s %9.2fs\n", r.name.c_str(), folap::to_string(r.verdict),
                    r.seconds);
      else
        std::printf("%-20s %-13s %9.2fs  %s\n", r.name.c_str(), "error", r.seconds,
                    r.error.c_str());
    }
    std::printf("reports under %s\n", cfg.outdir.c_str());
    return summary.exit_code();
  } catch (const folap::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
