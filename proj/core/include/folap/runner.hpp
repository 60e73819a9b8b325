#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "folap/fields.hpp"
#include "folap/hopf.hpp"
#include "folap/nonlocal.hpp"
#include "folap/young.hpp"

namespace folap {

// one experiment request from a config file: name plus loosely-typed knobs
struct ExperimentSpec {
  std::string name;
  std::map<std::string, double> num;
  std::map<std::string, std::vector<double>> lists;

  double get_num(const std::string& k, double fallback) const;
  std::vector<double> get_list(const std::string& k, std::vector<double> fallback) const;
};

struct RunConfig {
  YoungFunction yf = YoungFunction::power(4.0);
  double s = 0.5;
  Domain domain = Domain::ball({0.0, 0.0}, 1.0, 1);
  double h = 0.05;
  QuadratureScheme quad;
  std::vector<ExperimentSpec> experiments;
  std::string outdir = "out";
  std::uint64_t seed = 1;
  int workers = 1;
  std::string effective_json;  // normalized config echoed to disk
};

// parse + validate; throws ConfigError with an actionable message
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text, const std::string& origin);

struct ExperimentResult {
  std::string name;
  Verdict verdict = Verdict::Fail;
  HopfReport report;
  double seconds = 0.0;
  std::string error;  // nonempty => the experiment threw
};

struct RunSummary {
  std::vector<ExperimentResult> results;
  // 0 all pass, 1 any fail/error, 3 inconclusive only
  int exit_code() const;
};

// runs every configured experiment (optionally in a thread pool), writes
// <outdir>/<experiment>.report.json, .trace.csv, and effective-config.json
RunSummary run_all(const RunConfig& cfg);

// growth/index diagnostics for the configured family, as a JSON string
std::string young_report_json(const RunConfig& cfg);

}  // namespace folap
