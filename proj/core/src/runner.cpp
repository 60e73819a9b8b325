#include "folap/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "folap/errors.hpp"
#include "folap/solver.hpp"
#include "json.hpp"

namespace folap {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double num_at(const json& j, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (v.is_boolean()) return v.get<bool>() ? 1.0 : 0.0;
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::string str_at(const json& j, const std::string& key, const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> list_at(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("config key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) throw ConfigError("config key '" + key + "' must hold only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

const std::set<std::string>& known_experiments() {
  static const std::set<std::string> names{"two_sided",  "torsion_hopf",      "scaling",
                                           "principles", "continuity",        "barrier",
                                           "potential",  "boundary_quotient"};
  return names;
}

std::string format_csv(const HopfReport& rep) {
  std::string out;
  for (std::size_t c = 0; c < rep.columns.size(); ++c) {
    if (c) out += ',';
    out += rep.columns[c];
  }
  if (!rep.columns.empty()) out += '\n';
  char buf[40];
  for (const auto& row : rep.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      if (c) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw NumericError("cannot write " + tmp.string());
    out << content;
    if (!out.good()) throw NumericError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

HopfReport run_continuity(const RunConfig& cfg, const ExperimentSpec& ex) {
  double c0 = ex.get_num("c0", 1.0);
  double ratio = ex.get_num("ratio", 0.5);
  int count = static_cast<int>(ex.get_num("count", 12));
  double eps = ex.get_num("eps", 1e-6);
  if (count < 1) throw ConfigError("continuity needs count >= 1");
  std::vector<double> cs(count);
  cs[0] = c0;
  for (int k = 1; k < count; ++k) cs[k] = cs[k - 1] * ratio;
  auto g = Grid::make(cfg.domain, ex.get_num("h", cfg.h));
  Field u = distance_field(cfg.domain);
  ContinuitySweep sw = continuity_sweep(cfg.yf, u, cs, cfg.domain, *g, cfg.s, cfg.quad);

  HopfReport rep;
  rep.experiment = "continuity";
  rep.columns = {"k", "c_k", "sup_value", "majorant", "tail_bound"};
  bool mono = true;
  for (std::size_t k = 0; k < sw.coeff.size(); ++k) {
    rep.rows.push_back({double(k), sw.coeff[k], sw.sup_value[k], sw.majorant[k], sw.tail[k]});
    if (k > 0 && sw.majorant[k] > sw.majorant[k - 1]) mono = false;
  }
  rep.put("eps", eps);
  rep.put("first_sup", sw.sup_value.front());
  rep.put("last_sup", sw.sup_value.back());
  rep.put("last_tail_bound", sw.tail.back());
  if (!mono) rep.notes.push_back("the majorant failed to decrease termwise");
  bool small = sw.sup_value.back() <= eps;
  if (!small) rep.notes.push_back("the final sweep value is still above the target");
  rep.verdict = (mono && small) ? Verdict::Pass : Verdict::Fail;
  return rep;
}

HopfReport run_boundary_quotient(const RunConfig& cfg, const ExperimentSpec& ex,
                                 std::uint64_t seed_e) {
  double beta = ex.get_num("beta", 1.0);
  double h = ex.get_num("h", cfg.h);
  const Domain& dom = cfg.domain;
  auto g = Grid::make(dom, h);
  DiscreteSolution sol = solve_torsion(beta, dom, cfg.yf, cfg.s, g);
  double R = dom.inradius();
  Point x0{dom.center[0] + R, dom.center[1]};
  Point inward{-1.0, 0.0};
  RaySequence rs = boundary_quotient_ray(sol.as_field, x0, inward,
                                         ex.get_num("t0", 0.5 * R),
                                         ex.get_num("t_min", 4.0 * h));
  ConeStats cone = boundary_quotient_cone(sol.as_field, x0, inward,
                                          ex.get_num("beta_angle", 0.5),
                                          static_cast<int>(ex.get_num("count", 64)), seed_e);
  HopfReport rep;
  rep.experiment = "boundary_quotient";
  rep.columns = {"t", "q"};
  for (std::size_t k = 0; k < rs.t.size(); ++k) rep.rows.push_back({rs.t[k], rs.q[k]});
  rep.put("beta", beta);
  rep.put("h", h);
  rep.put("ray_min_q", rs.running_min);
  rep.put("cone_min_q", cone.min_q);
  rep.put("cone_max_q", cone.max_q);
  rep.put("fit_over_cbeta", cone.fit_over_cbeta);
  rep.put("cone_samples", double(cone.samples));
  if (!rs.note.empty()) rep.notes.push_back(rs.note);
  if (!rs.pass) rep.notes.push_back("ray quotients failed the positivity/ratio check");
  if (!cone.pass) rep.notes.push_back("cone quotients failed positivity");
  rep.verdict = (rs.pass && cone.pass) ? Verdict::Pass : Verdict::Fail;
  return rep;
}

HopfReport dispatch(const RunConfig& cfg, const ExperimentSpec& ex, std::uint64_t seed_e) {
  const std::string& nm = ex.name;
  int dim = cfg.domain.dim;
  if (nm == "two_sided")
    return verify_two_sided(cfg.yf, cfg.s, ex.get_num("beta", 1.0),
                            ex.get_list("R_list", {0.5, 1.0, 2.0}), ex.get_num("h", cfg.h),
                            ex.get_num("refine", 1.0) != 0.0,
                            static_cast<int>(ex.get_num("dim", dim)));
  if (nm == "torsion_hopf")
    return verify_torsion_hopf(cfg.yf, cfg.s, ex.get_list("eps_list", {0.25, 0.5, 1.0, 2.0}),
                               ex.get_num("rho", 0.5), ex.get_num("h", cfg.h),
                               ex.get_num("refine", 1.0) != 0.0,
                               static_cast<int>(ex.get_num("dim", dim)));
  if (nm == "scaling")
    return verify_scaling(cfg.yf, cfg.s, ex.get_num("beta", 1.0),
                          ex.get_list("R_list", {0.5, 2.0}), ex.get_num("h", cfg.h),
                          static_cast<int>(ex.get_num("dim", dim)));
  if (nm == "principles")
    return verify_principles(cfg.yf, cfg.s, static_cast<int>(ex.get_num("n_nonneg", 20)),
                             static_cast<int>(ex.get_num("n_pairs", 10)), seed_e);
  if (nm == "continuity") return run_continuity(cfg, ex);
  if (nm == "boundary_quotient") return run_boundary_quotient(cfg, ex, seed_e);
  if (nm == "barrier")
    return verify_barrier(cfg.yf, cfg.s, ex.get_num("rho", 0.25), ex.get_num("r", 1.0),
                          ex.get_num("u_inf", 1.0), cfg.quad,
                          static_cast<int>(ex.get_num("dim", dim)));
  if (nm == "potential") {
    double c0 = ex.get_num("c", -1.0);
    Field c_field = analytic_field([c0](const Point&) { return c0; }, cfg.domain, false, 0.0,
                                   std::fabs(c0));
    return potential_experiment(cfg.yf, cfg.s, c_field, ex.get_num("beta", 1.0), cfg.domain,
                                ex.get_num("h", cfg.h));
  }
  throw ConfigError("unknown experiment: " + nm);
}

}  // namespace

double ExperimentSpec::get_num(const std::string& k, double fallback) const {
  auto it = num.find(k);
  return it == num.end() ? fallback : it->second;
}

std::vector<double> ExperimentSpec::get_list(const std::string& k,
                                             std::vector<double> fallback) const {
  auto it = lists.find(k);
  return it == lists.end() ? std::move(fallback) : it->second;
}

RunConfig config_from_json_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(j,
                 {"family", "s", "domain", "h", "quadrature", "experiments", "outdir", "seed",
                  "workers"},
                 "the config root");

  RunConfig cfg;
  json fam_echo{{"kind", "power"}, {"p", 4.0}};
  if (j.contains("family")) {
    const json& f = j.at("family");
    if (!f.is_object()) throw ConfigError("'family' must be an object");
    reject_unknown(f, {"kind", "p", "q", "cp", "cq", "normalized"}, "family");
    std::string kind = str_at(f, "kind", "power");
    try {
      if (kind == "power") {
        double p = num_at(f, "p", 4.0);
        cfg.yf = YoungFunction::power(p);
        fam_echo = json{{"kind", "power"}, {"p", p}};
      } else if (kind == "sum_of_powers") {
        double cp = num_at(f, "cp", 1.0), p = num_at(f, "p", 3.0);
        double cq = num_at(f, "cq", 1.0), q = num_at(f, "q", 5.0);
        bool normalized = num_at(f, "normalized", 1.0) != 0.0;
        cfg.yf = normalized ? YoungFunction::sum_of_powers_normalized(cp, p, cq, q)
                            : YoungFunction::sum_of_powers(cp, p, cq, q);
        fam_echo = json{{"kind", "sum_of_powers"}, {"cp", cp}, {"p", p},
                        {"cq", cq},                {"q", q},   {"normalized", normalized}};
      } else if (kind == "power_log") {
        double p = num_at(f, "p", 3.0);
        cfg.yf = YoungFunction::power_log(p);
        fam_echo = json{{"kind", "power_log"}, {"p", p}};
      } else {
        throw ConfigError("unknown family kind '" + kind +
                          "' (expected power, sum_of_powers, or power_log)");
      }
    } catch (const DomainError& e) {
      throw ConfigError(std::string("bad family parameters: ") + e.what());
    }
  }

  cfg.s = num_at(j, "s", 0.5);
  if (!(cfg.s > 0.0 && cfg.s < 1.0)) throw ConfigError("s must lie in (0,1)");
  if (!cfg.yf.indices().admissible_for(cfg.s)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "family %s is inadmissible at s = %g: the growth index must satisfy "
                  "p > 1/(1-s) and p > 2, got p = %g",
                  cfg.yf.name().c_str(), cfg.s, cfg.yf.indices().p_fn);
    throw ConfigError(buf);
  }

  json dom_echo{{"kind", "ball"}, {"center", {0.0, 0.0}}, {"R", 1.0}, {"dim", 1}};
  if (j.contains("domain")) {
    const json& d = j.at("domain");
    if (!d.is_object()) throw ConfigError("'domain' must be an object");
    std::string kind = str_at(d, "kind", "ball");
    try {
      if (kind == "ball") {
        reject_unknown(d, {"kind", "center", "R", "dim"}, "domain");
        int dim = static_cast<int>(num_at(d, "dim", 1.0));
        std::vector<double> c{0.0, 0.0};
        if (d.contains("center")) c = list_at(d.at("center"), "center");
        if (c.size() < std::size_t(dim)) throw ConfigError("'center' is shorter than 'dim'");
        c.resize(2, 0.0);
        double R = num_at(d, "R", 1.0);
        cfg.domain = Domain::ball({c[0], c[1]}, R, dim);
        dom_echo = json{{"kind", "ball"}, {"center", {c[0], c[1]}}, {"R", R}, {"dim", dim}};
      } else if (kind == "interval") {
        reject_unknown(d, {"kind", "a", "b"}, "domain");
        double a = num_at(d, "a", 0.0), b = num_at(d, "b", 1.0);
        cfg.domain = Domain::interval(a, b);
        dom_echo = json{{"kind", "interval"}, {"a", a}, {"b", b}};
      } else if (kind == "box") {
        reject_unknown(d, {"kind", "lo", "hi"}, "domain");
        std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.0};
        if (d.contains("lo")) lo = list_at(d.at("lo"), "lo");
        if (d.contains("hi")) hi = list_at(d.at("hi"), "hi");
        if (lo.size() != 2 || hi.size() != 2)
          throw ConfigError("box corners need two coordinates each");
        cfg.domain = Domain::box({lo[0], lo[1]}, {hi[0], hi[1]});
        dom_echo = json{{"kind", "box"}, {"lo", {lo[0], lo[1]}}, {"hi", {hi[0], hi[1]}}};
      } else {
        throw ConfigError("unknown domain kind '" + kind +
                          "' (expected ball, interval, or box)");
      }
    } catch (const DomainError& e) {
      throw ConfigError(std::string("bad domain parameters: ") + e.what());
    }
  }

  cfg.h = num_at(j, "h", 0.05);
  if (!(cfg.h > 0.0)) throw ConfigError("h must be positive");

  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    if (!q.is_object()) throw ConfigError("'quadrature' must be an object");
    reject_unknown(q, {"m_near", "m_ang", "gamma", "R_trunc", "far_count", "split"},
                   "quadrature");
    cfg.quad.near_count = static_cast<int>(num_at(q, "m_near", cfg.quad.near_count));
    cfg.quad.angular_count = static_cast<int>(num_at(q, "m_ang", cfg.quad.angular_count));
    cfg.quad.grading = num_at(q, "gamma", cfg.quad.grading);
    cfg.quad.truncation_radius = num_at(q, "R_trunc", cfg.quad.truncation_radius);
    cfg.quad.far_count = static_cast<int>(num_at(q, "far_count", cfg.quad.far_count));
    cfg.quad.split_radius = num_at(q, "split", cfg.quad.split_radius);
    if (cfg.quad.near_count < 2 || cfg.quad.far_count < 2)
      throw ConfigError("quadrature counts must be at least 2");
    if (!(cfg.quad.grading > 0.0 && cfg.quad.grading < 1.0))
      throw ConfigError("quadrature grading must lie in (0,1)");
    if (!(cfg.quad.split_radius > 0.0) || !(cfg.quad.truncation_radius > 0.0))
      throw ConfigError("quadrature radii must be positive");
  }

  if (j.contains("experiments")) {
    const json& arr = j.at("experiments");
    if (!arr.is_array()) throw ConfigError("'experiments' must be an array");
    std::set<std::string> seen;
    for (const json& e : arr) {
      if (!e.is_object() || !e.contains("name"))
        throw ConfigError("each experiment needs an object with a 'name'");
      ExperimentSpec spec;
      spec.name = str_at(e, "name", "");
      if (!known_experiments().count(spec.name)) {
        std::string msg = "unknown experiment '" + spec.name + "' (expected one of:";
        for (const std::string& n : known_experiments()) msg += " " + n;
        throw ConfigError(msg + ")");
      }
      if (!seen.insert(spec.name).second)
        throw ConfigError("duplicate experiment name: " + spec.name);
      for (const auto& item : e.items()) {
        if (item.key() == "name") continue;
        const json& v = item.value();
        if (v.is_array())
          spec.lists[item.key()] = list_at(v, item.key());
        else if (v.is_number() || v.is_boolean())
          spec.num[item.key()] = num_at(e, item.key(), 0.0);
        else
          throw ConfigError("experiment parameter '" + item.key() +
                            "' must be a number, bool, or number array");
      }
      cfg.experiments.push_back(std::move(spec));
    }
  }

  cfg.outdir = str_at(j, "outdir", "out");
  if (cfg.outdir.empty()) throw ConfigError("outdir must not be empty");
  double seed = num_at(j, "seed", 1.0);
  if (seed < 0.0) throw ConfigError("seed must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.workers = static_cast<int>(num_at(j, "workers", 1.0));
  if (cfg.workers < 1) throw ConfigError("workers must be at least 1");

  json eff;
  eff["family"] = fam_echo;
  eff["s"] = cfg.s;
  eff["domain"] = dom_echo;
  eff["h"] = cfg.h;
  eff["quadrature"] = json{{"split", cfg.quad.split_radius},
                           {"m_near", cfg.quad.near_count},
                           {"gamma", cfg.quad.grading},
                           {"far_count", cfg.quad.far_count},
                           {"m_ang", cfg.quad.angular_count},
                           {"R_trunc", cfg.quad.truncation_radius}};
  eff["experiments"] = json::array();
  for (const ExperimentSpec& spec : cfg.experiments) {
    json e{{"name", spec.name}};
    for (const auto& kv : spec.num) e[kv.first] = kv.second;
    for (const auto& kv : spec.lists) e[kv.first] = kv.second;
    eff["experiments"].push_back(std::move(e));
  }
  eff["outdir"] = cfg.outdir;
  eff["seed"] = cfg.seed;
  eff["workers"] = cfg.workers;
  cfg.effective_json = eff.dump(2) + "\n";
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str(), path);
}

int RunSummary::exit_code() const {
  bool any_bad = false, any_inconclusive = false;
  for (const ExperimentResult& r : results) {
    if (!r.error.empty() || r.verdict == Verdict::Fail) any_bad = true;
    if (r.verdict == Verdict::Inconclusive) any_inconclusive = true;
  }
  if (any_bad) return 1;
  if (any_inconclusive) return 3;
  return 0;
}

RunSummary run_all(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.outdir);
  atomic_write(fs::path(cfg.outdir) / "effective-config.json", cfg.effective_json);

  const int n = static_cast<int>(cfg.experiments.size());
  RunSummary summary;
  summary.results.resize(n);
  std::vector<char> is_config_error(n, 0);

  auto run_one = [&](int i) {
    const ExperimentSpec& ex = cfg.experiments[i];
    ExperimentResult& res = summary.results[i];
    res.name = ex.name;
    std::uint64_t seed_e = cfg.seed ^ fnv1a(ex.name);
    auto t0 = std::chrono::steady_clock::now();
    try {
      res.report = dispatch(cfg, ex, seed_e);
      res.verdict = res.report.verdict;
    } catch (const ConfigError& e) {
      res.error = e.what();
      is_config_error[i] = 1;
    } catch (const std::exception& e) {
      res.error = e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  int workers = std::max(1, cfg.workers);
  if (const char* cap = std::getenv("FOLAP_WORKERS")) {
    int c = std::atoi(cap);
    if (c >= 1) workers = std::min(workers, c);
  }
  workers = std::min(workers, std::max(1, n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    auto pull = [&] {
      for (int i; (i = next.fetch_add(1)) < n;) run_one(i);
    };
    std::vector<std::future<void>> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, pull));
    for (auto& f : pool) f.get();
  }

  for (int i = 0; i < n; ++i) {
    const ExperimentResult& res = summary.results[i];
    json rj;
    rj["experiment"] = res.name;
    rj["verdict"] = res.error.empty() ? to_string(res.verdict) : "fail";
    json cj = json::object();
    for (const auto& kv : res.report.constants) cj[kv.first] = kv.second;
    rj["constants"] = std::move(cj);
    rj["notes"] = res.report.notes;
    if (!res.error.empty()) rj["error"] = res.error;
    fs::path base = fs::path(cfg.outdir) / res.name;
    atomic_write(base.string() + ".report.json", rj.dump(2) + "\n");
    atomic_write(base.string() + ".trace.csv", format_csv(res.report));
  }

  for (int i = 0; i < n; ++i)
    if (is_config_error[i]) throw ConfigError(summary.results[i].error);
  return summary;
}

std::string young_report_json(const RunConfig& cfg) {
  json j;
  j["family"] = cfg.yf.name();
  j["s"] = cfg.s;
  const GrowthIndices& gi = cfg.yf.indices();
  j["indices"] = json{{"p_fn", gi.p_fn},         {"q_fn", gi.q_fn},
                      {"p_dd", gi.p_dd},         {"q_dd", gi.q_dd},
                      {"p_wide", gi.p_wide()},   {"q_wide", gi.q_wide()}};
  j["admissible"] = gi.admissible_for(cfg.s);
  Delta2 d2 = check_delta2(cfg.yf);
  j["delta2"] = json{{"C", d2.C}, {"holds", d2.holds}};
  Sandwich sw = sandwich_check(cfg.yf, 1.0);
  j["sandwich_at_1"] = json{{"ok_A", sw.ok_A},
                            {"ok_a", sw.ok_a},
                            {"ok_a_prime", sw.ok_a_prime},
                            {"worst_margin", sw.worst_margin}};
  j["complementary_at_1"] = complementary(cfg.yf, 1.0);
  return j.dump(2) + "\n";
}

}  // namespace folap
