#include "seqir/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "seqir/demography.hpp"
#include "seqir/io.hpp"
#include "seqir/lyapunov.hpp"
#include "seqir/steady_state.hpp"
#include "seqir/vaccination.hpp"

namespace seqir {

Profile ProfileSpec::materialize(const GridPtr& grid) const {
  switch (kind) {
    case Kind::constant:
      return Profile::constant(grid, value);
    case Kind::exponential:
      return Profile::sample(grid,
                             [&](double a) { return scale * std::exp(rate * a); });
    case Kind::piecewise:
      return Profile::sample(grid, [&](double a) {
        if (a <= points.front().first) return points.front().second;
        if (a >= points.back().first) return points.back().second;
        for (std::size_t j = 1; j < points.size(); ++j) {
          if (a <= points[j].first) {
            double t = (a - points[j - 1].first) /
                       (points[j].first - points[j - 1].first);
            return points[j - 1].second +
                   t * (points[j].second - points[j - 1].second);
          }
        }
        return points.back().second;
      });
  }
  throw Error("ProfileSpec: unreachable");
}

std::string run_kind_name(RunKind k) {
  switch (k) {
    case RunKind::simulate: return "simulate";
    case RunKind::steady: return "steady";
    case RunKind::r0: return "r0";
    case RunKind::lyapunov: return "lyapunov";
    case RunKind::vaccinate: return "vaccinate";
    case RunKind::sweep: return "sweep";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

struct RawConfig {
  // key is "section.name" ("" section for top-level keys)
  std::map<std::string, std::pair<std::string, int>> entries;  // value, line
  std::vector<std::string> diagnostics;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        raw.diagnostics.push_back("line " + std::to_string(lineno) +
                                  ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      raw.diagnostics.push_back("line " + std::to_string(lineno) +
                                ": expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::string full = section.empty() ? key : section + "." + key;
    if (raw.entries.count(full))
      raw.diagnostics.push_back("line " + std::to_string(lineno) +
                                ": duplicate key '" + full + "'");
    raw.entries[full] = {value, lineno};
  }
  return raw;
}

class ConfigReader {
 public:
  explicit ConfigReader(RawConfig raw) : raw_(std::move(raw)) {
    diags_ = raw_.diagnostics;
  }

  bool has(const std::string& key) const { return raw_.entries.count(key) > 0; }

  std::optional<std::string> take(const std::string& key) {
    auto it = raw_.entries.find(key);
    if (it == raw_.entries.end()) return std::nullopt;
    consumed_.push_back(key);
    return it->second.first;
  }

  std::optional<double> take_number(const std::string& key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    char* end = nullptr;
    double x = std::strtod(v->c_str(), &end);
    if (end == v->c_str() || *end != '\0' || !std::isfinite(x)) {
      fail(key, "expected a number, got '" + *v + "'");
      return std::nullopt;
    }
    return x;
  }

  std::optional<double> take_rate(const std::string& key) {
    auto x = take_number(key);
    if (x && *x < 0.0) {
      fail(key, "rate must be >= 0");
      return std::nullopt;
    }
    return x;
  }

  std::optional<ProfileSpec> take_profile(const std::string& key,
                                          bool nonnegative = true) {
    auto v = take(key);
    if (!v) return std::nullopt;
    std::istringstream in(*v);
    std::string kindname;
    in >> kindname;
    ProfileSpec spec;
    auto bad = [&](const std::string& msg) {
      fail(key, msg);
      return std::optional<ProfileSpec>();
    };
    if (kindname == "constant") {
      spec.kind = ProfileSpec::Kind::constant;
      if (!(in >> spec.value)) return bad("constant needs one value");
      if (nonnegative && spec.value < 0.0) return bad("rate must be >= 0");
    } else if (kindname == "exponential") {
      spec.kind = ProfileSpec::Kind::exponential;
      if (!(in >> spec.scale >> spec.rate))
        return bad("exponential needs scale and rate");
      if (nonnegative && spec.scale < 0.0) return bad("scale must be >= 0");
    } else if (kindname == "piecewise") {
      spec.kind = ProfileSpec::Kind::piecewise;
      std::string tok;
      while (in >> tok) {
        std::size_t colon = tok.find(':');
        if (colon == std::string::npos)
          return bad("piecewise points must look like age:value");
        char* e1 = nullptr;
        char* e2 = nullptr;
        std::string a = tok.substr(0, colon), b = tok.substr(colon + 1);
        double age = std::strtod(a.c_str(), &e1);
        double val = std::strtod(b.c_str(), &e2);
        if (e1 == a.c_str() || *e1 != '\0' || e2 == b.c_str() || *e2 != '\0')
          return bad("piecewise points must look like age:value");
        if (nonnegative && val < 0.0) return bad("values must be >= 0");
        if (!spec.points.empty() && age <= spec.points.back().first)
          return bad("piecewise ages must be strictly increasing");
        spec.points.push_back({age, val});
      }
      if (spec.points.size() < 2) return bad("piecewise needs at least two points");
    } else {
      return bad("unknown profile shape '" + kindname +
                 "' (want constant | exponential | piecewise)");
    }
    std::string rest;
    if (in >> rest) return bad("trailing tokens after profile spec");
    return spec;
  }

  void require(const std::string& key) {
    if (!has(key)) diags_.push_back(key + ": missing");
  }

  void fail(const std::string& key, const std::string& msg) {
    diags_.push_back(key + ": " + msg);
  }

  void flag_unknown() {
    for (const auto& [key, value] : raw_.entries) {
      if (std::find(consumed_.begin(), consumed_.end(), key) == consumed_.end())
        diags_.push_back(key + ": unknown key (line " +
                         std::to_string(value.second) + ")");
    }
  }

  std::vector<std::string>& diagnostics() { return diags_; }

 private:
  RawConfig raw_;
  std::vector<std::string> consumed_;
  std::vector<std::string> diags_;
};

}  // namespace

ValidationResult validate_config(const std::string& text) {
  ConfigReader r(tokenize(text));
  Scenario s;

  r.require("run");
  if (auto run = r.take("run")) {
    if (*run == "simulate") s.run = RunKind::simulate;
    else if (*run == "steady") s.run = RunKind::steady;
    else if (*run == "r0") s.run = RunKind::r0;
    else if (*run == "lyapunov") s.run = RunKind::lyapunov;
    else if (*run == "vaccinate") s.run = RunKind::vaccinate;
    else if (*run == "sweep") s.run = RunKind::sweep;
    else
      r.fail("run", "unknown run type '" + *run +
                        "' (want simulate|steady|r0|lyapunov|vaccinate|sweep)");
  }
  if (auto v = r.take("output_dir")) s.output_dir = *v;

  if (auto v = r.take_number("grid.a_max")) {
    if (*v <= 0.0) r.fail("grid.a_max", "must be > 0");
    else s.a_max = *v;
  }
  if (auto v = r.take_number("grid.n")) {
    if (*v < 3.0 || *v != std::floor(*v)) r.fail("grid.n", "must be an integer >= 3");
    else s.n = static_cast<int>(*v);
  }

  r.require("demography.mu");
  if (auto v = r.take_profile("demography.mu")) s.mu = *v;
  if (r.has("demography.beta")) {
    if (auto v = r.take_profile("demography.beta")) s.beta = *v;
  } else {
    s.beta = s.mu;  // net reproduction rate 1 for the survival-weighted default
  }

  for (const char* name : {"mu1", "q1", "gamma1", "gamma2", "gamma"})
    r.require(std::string("epi.") + name);
  if (auto v = r.take_rate("epi.mu1")) s.mu1 = *v;
  if (auto v = r.take_rate("epi.q1")) s.q1 = *v;
  if (auto v = r.take_rate("epi.gamma1")) s.gamma1 = *v;
  if (auto v = r.take_rate("epi.gamma2")) s.gamma2 = *v;
  if (auto v = r.take_rate("epi.gamma")) s.gamma = *v;
  r.require("epi.k1");
  r.require("epi.k2");
  if (auto v = r.take_profile("epi.k1")) s.k1 = *v;
  if (auto v = r.take_profile("epi.k2")) s.k2 = *v;

  if (auto v = r.take("seed.compartment")) {
    if (*v == "exposed") s.seed.compartment = SeedCompartment::exposed;
    else if (*v == "infected") s.seed.compartment = SeedCompartment::infected;
    else r.fail("seed.compartment", "want exposed|infected");
  }
  if (auto v = r.take("seed.shape")) {
    if (*v == "gaussian") s.seed.shape = SeedShape::gaussian;
    else if (*v == "box") s.seed.shape = SeedShape::box;
    else r.fail("seed.shape", "want gaussian|box");
  }
  if (auto v = r.take_number("seed.mass")) {
    if (*v < 0.0) r.fail("seed.mass", "must be >= 0");
    else s.seed.mass = *v;
  }
  if (auto v = r.take_number("seed.center")) s.seed.center = *v;
  if (auto v = r.take_number("seed.width")) {
    if (*v <= 0.0) r.fail("seed.width", "must be > 0");
    else s.seed.width = *v;
  }

  if (auto v = r.take_number("simulate.t_end")) {
    if (*v < 0.0) r.fail("simulate.t_end", "must be >= 0");
    else s.simulate_t_end = *v;
  }
  if (auto v = r.take_number("lyapunov.t_end")) {
    if (*v <= 0.0) r.fail("lyapunov.t_end", "must be > 0");
    else s.lyapunov_t_end = *v;
  }
  if (auto v = r.take_number("simulate.stride_years")) {
    if (*v <= 0.0) r.fail("simulate.stride_years", "must be > 0");
    else s.stride_years = *v;
  }

  bool needs_costs = s.run == RunKind::vaccinate || s.run == RunKind::sweep;
  if (needs_costs) {
    for (const char* name : {"g1", "g2", "f", "F_bar"})
      r.require(std::string("costs.") + name);
  }
  if (r.has("costs.g1") || r.has("costs.g2") || r.has("costs.f") ||
      r.has("costs.F_bar")) {
    s.costs_given = true;
    if (auto v = r.take_profile("costs.g1")) s.g1 = *v;
    if (auto v = r.take_profile("costs.g2")) s.g2 = *v;
    if (auto v = r.take_profile("costs.f")) s.f = *v;
    if (auto v = r.take_number("costs.F_bar")) {
      if (*v <= 0.0) r.fail("costs.F_bar", "must be > 0");
      else s.F_bar = *v;
    }
  }
  if (auto v = r.take_number("vaccinate.tol")) {
    if (*v <= 0.0) r.fail("vaccinate.tol", "must be > 0");
    else s.vaccinate_tol = *v;
  }
  if (s.run == RunKind::sweep) r.require("sweep.F_bar_values");
  if (auto v = r.take("sweep.F_bar_values")) {
    std::istringstream in(*v);
    double x;
    while (in >> x) {
      if (x <= 0.0) {
        r.fail("sweep.F_bar_values", "values must be > 0");
        break;
      }
      s.sweep_f_bars.push_back(x);
    }
    if (s.sweep_f_bars.empty()) r.fail("sweep.F_bar_values", "needs at least one value");
  }

  r.flag_unknown();

  ValidationResult result;
  result.diagnostics = r.diagnostics();
  if (result.diagnostics.empty()) result.scenario = std::move(s);
  return result;
}

Scenario parse_config(const std::string& text) {
  ValidationResult v = validate_config(text);
  if (!v.scenario) {
    std::string what = "configuration is invalid";
    for (const std::string& d : v.diagnostics) what += "\n  " + d;
    throw ConfigError(what, v.diagnostics);
  }
  return *v.scenario;
}

// ---------------------------------------------------------------------------
// Run dispatch
// ---------------------------------------------------------------------------

namespace {

namespace fs = std::filesystem;

struct Materialized {
  GridPtr grid;
  Demography demography;
  EpiParams params;
  Profile U;
};

Materialized materialize(const Scenario& s, std::ostream& log) {
  GridPtr grid = AgeGrid::make(s.a_max, s.n);
  Demography demo(s.mu.materialize(grid), s.beta.materialize(grid));
  if (!demo.survival_tail_ok())
    log << "warning: survival at a_max is " << demo.survival_at_max()
        << " (> 1e-6); integrals inherit this truncation error\n";
  double rnet = net_reproduction_rate(demo);
  if (std::fabs(rnet - 1.0) > kNetReproductionTolerance)
    log << "warning: net reproduction rate is " << rnet
        << "; the stationary-population theory assumes 1\n";
  EpiParams params(s.mu1, s.q1, s.gamma1, s.gamma2, s.gamma,
                   s.k1.materialize(grid), s.k2.materialize(grid));
  Profile U = stable_age_distribution(demo);
  return Materialized{grid, std::move(demo), std::move(params), std::move(U)};
}

std::ofstream open_artifact(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot write artifact " + (dir / name).string());
  return out;
}

nlohmann::json breakdown_json(const R0Breakdown& b) {
  return {{"r0", b.r0}, {"r1", b.r1}, {"r2", b.r2}};
}

RunStatus run_r0(const Scenario& s, const Materialized& m, const fs::path& dir,
                 std::ostream& log) {
  R0Breakdown quad = r0_quadrature_breakdown(m.params, m.U);
  double reversed = r0_quadrature_reversed(m.params, m.U);

  nlohmann::json j;
  j["r0_quadrature"] = breakdown_json(quad);
  j["r0_reversed"] = reversed;
  bool constants = s.mu.is_constant() && s.k1.is_constant() && s.k2.is_constant();
  if (constants) {
    R0Breakdown closed =
        r0_closed_form(s.mu.value, s.gamma, s.mu1, s.q1, s.gamma1, s.gamma2,
                       s.k1.value * s.k2.value);
    j["closed_form"] = breakdown_json(closed);
    j["relative_gap"] = std::fabs(quad.r0 - closed.r0) / closed.r0;
  } else {
    j["closed_form"] = nullptr;
    j["relative_gap"] = nullptr;
  }
  open_artifact(dir, "r0.json") << j.dump(2) << '\n';

  auto csv = open_artifact(dir, "r0.csv");
  csv << "quantity,value\n";
  csv << "r0," << fmt17(quad.r0) << "\n";
  csv << "r1," << fmt17(quad.r1) << "\n";
  csv << "r2," << fmt17(quad.r2) << "\n";
  csv << "r0_reversed," << fmt17(reversed) << "\n";

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "R0 = %.3f (R1 = %.3f, R2 = %.3f)", quad.r0, quad.r1, quad.r2);
  log << buf << '\n';
  return RunStatus::ok;
}

RunStatus run_steady(const Scenario& s, const Materialized& m, const fs::path& dir,
                     std::ostream& log) {
  (void)s;
  R0Breakdown quad = r0_quadrature_breakdown(m.params, m.U);
  std::optional<SteadyState> endemic = solve_endemic(m.params, m.U);

  nlohmann::json j;
  j["r0"] = quad.r0;
  j["r1"] = quad.r1;
  j["r2"] = quad.r2;
  if (endemic) {
    j["h"] = endemic->h;
    j["avg_age"] = average_age_of_infection(*endemic, m.demography);
  } else {
    j["h"] = 0.0;
    j["avg_age"] = nullptr;
  }
  open_artifact(dir, "steady.json") << j.dump(2) << '\n';

  SteadyState out = endemic ? *endemic : steady_profiles(0.0, m.params);
  auto csv = open_artifact(dir, "steady.csv");
  write_steady_csv(csv, out);

  char buf[256];
  if (endemic)
    std::snprintf(buf, sizeof(buf), "endemic steady state: h = %.6g, R0 = %.3f",
                  endemic->h, quad.r0);
  else
    std::snprintf(buf, sizeof(buf), "disease-free steady state (R0 = %.3f)",
                  quad.r0);
  log << buf << '\n';
  return RunStatus::ok;
}

int stride_steps(const Scenario& s, const GridPtr& grid) {
  return std::max(1, static_cast<int>(std::lround(s.stride_years / grid->spacing())));
}

RunStatus run_simulate(const Scenario& s, const Materialized& m, const fs::path& dir,
                       std::ostream& log) {
  EpiState initial = seeded_initial_state(m.grid, m.U, s.seed);
  Trajectory traj =
      simulate(initial, m.params, m.U, s.simulate_t_end, stride_steps(s, m.grid));
  auto csv = open_artifact(dir, "simulate.csv");
  write_trajectory_csv(csv, traj);

  double max_defect = 0.0;
  for (const EpiState& st : traj.states) {
    for (int k = 0; k < m.grid->size(); ++k) {
      double sum = st.s[k] + st.e[k] + st.q[k] + st.i[k] + st.r[k];
      max_defect = std::max(max_defect, std::fabs(sum - 1.0));
    }
  }
  double infected_mass = integrate(traj.back().i * m.U);
  nlohmann::json j;
  j["t_end"] = traj.back().t;
  j["samples"] = traj.size();
  j["final_infected_mass"] = infected_mass;
  j["max_conservation_defect"] = max_defect;
  open_artifact(dir, "simulate.json") << j.dump(2) << '\n';

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "simulated to t = %.6g: %zu samples, final infected mass %.6g",
                traj.back().t, traj.size(), infected_mass);
  log << buf << '\n';
  return RunStatus::ok;
}

RunStatus run_lyapunov(const Scenario& s, const Materialized& m, const fs::path& dir,
                       std::ostream& log) {
  double r0 = r0_quadrature(m.params, m.U);
  LyapunovWeights w = compute_weights(m.params, m.U);
  EpiState initial = seeded_initial_state(m.grid, m.U, s.seed);
  Trajectory traj =
      simulate(initial, m.params, m.U, s.lyapunov_t_end, stride_steps(s, m.grid));
  DecreaseReport report = verify_decrease(traj, w, m.params, m.U, r0);

  auto json = open_artifact(dir, "lyapunov.json");
  write_decrease_json(json, report);
  auto csv = open_artifact(dir, "lyapunov.csv");
  csv << "t,V,bound\n";
  for (const DecreaseSample& sample : report.samples)
    csv << fmt17(sample.t) << ',' << fmt17(sample.V) << ',' << fmt17(sample.bound)
        << '\n';

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "Lyapunov check: %s (R0 = %.3f, max violation = %.3g)",
                report.pass ? "PASS" : "FAIL", r0, report.max_violation);
  log << buf << '\n';
  return RunStatus::ok;
}

std::string policy_summary(const VaccinationPolicy& policy) {
  if (policy.empty()) return "no vaccination";
  std::string out;
  for (const VaccinationPolicy::Atom& a : policy.atoms) {
    char buf[64];
    if (a.deplete)
      std::snprintf(buf, sizeof(buf), "(age %.2f, deplete)", a.age);
    else
      std::snprintf(buf, sizeof(buf), "(age %.2f, c = %.4g)", a.age, a.intensity);
    if (!out.empty()) out += " + ";
    out += buf;
  }
  return out;
}

RunStatus run_vaccinate(const Scenario& s, const Materialized& m, const fs::path& dir,
                        std::ostream& log) {
  CostWeights costs(s.g1.materialize(m.grid), s.g2.materialize(m.grid),
                    s.f.materialize(m.grid), s.F_bar);
  try {
    SelfConsistentResult result =
        solve_self_consistent(m.params, m.demography, costs, s.vaccinate_tol);
    auto json = open_artifact(dir, "vaccinate.json");
    write_policy_json(json, result);

    VaccKernels kernels = build_kernels(result.h, m.params, m.demography, costs);
    auto csv = open_artifact(dir, "vaccinate.csv");
    csv << "a,C1,F1,H1\n";
    for (int k = 0; k < m.grid->size(); ++k)
      csv << fmt17(m.grid->node(k)) << ',' << fmt17(kernels.C1[k]) << ','
          << fmt17(kernels.F1[k]) << ',' << fmt17(kernels.H1[k]) << '\n';

    char buf[256];
  std::snprintf(buf, sizeof(buf),
                  "optimal policy: %s, cost = %.6g, h = %.6g",
                  policy_summary(result.policy).c_str(), result.opt.value.cost,
                  result.h);
    log << buf << '\n';
    return RunStatus::ok;
  } catch (const Infeasible& err) {
    nlohmann::json j;
    j["error"] = err.what();
    open_artifact(dir, "vaccinate.json") << j.dump(2) << '\n';
    log << "infeasible: " << err.what() << '\n';
    return RunStatus::infeasible;
  } catch (const NotConverged& err) {
    nlohmann::json j;
    j["error"] = err.what();
    j["h_history"] = err.h_history;
    open_artifact(dir, "vaccinate.json") << j.dump(2) << '\n';
    log << "not converged: " << err.what() << '\n';
    return RunStatus::infeasible;
  }
}

RunStatus run_sweep(const Scenario& s, const Materialized& m, const fs::path& dir,
                    std::ostream& log) {
  auto csv = open_artifact(dir, "sweep.csv");
  csv << "F_bar,cost,prevalence,h,converged,age1,intensity1,age2,intensity2,age3,"
         "intensity3\n";
  nlohmann::json rows = nlohmann::json::array();
  bool all_ok = true;
  for (double f_bar : s.sweep_f_bars) {
    CostWeights costs(s.g1.materialize(m.grid), s.g2.materialize(m.grid),
                      s.f.materialize(m.grid), f_bar);
    nlohmann::json row;
    row["F_bar"] = f_bar;
    csv << fmt17(f_bar) << ',';
    try {
      SelfConsistentResult result =
          solve_self_consistent(m.params, m.demography, costs, s.vaccinate_tol);
      csv << fmt17(result.opt.value.cost) << ',' << fmt17(result.opt.prevalence)
          << ',' << fmt17(result.h) << ",1";
      for (std::size_t j = 0; j < 3; ++j) {
        if (j < result.policy.atoms.size()) {
          const VaccinationPolicy::Atom& a = result.policy.atoms[j];
          csv << ',' << fmt17(a.age) << ','
              << (a.deplete ? std::string("inf") : fmt17(a.intensity));
        } else {
          csv << ",,";
        }
      }
      csv << '\n';
      row["cost"] = result.opt.value.cost;
      row["h"] = result.h;
      row["converged"] = true;
    } catch (const Error& err) {
      csv << ",,,0,,,,,,\n";
      row["error"] = err.what();
      row["converged"] = false;
      all_ok = false;
    }
    rows.push_back(std::move(row));
  }
  open_artifact(dir, "sweep.json") << rows.dump(2) << '\n';
  char buf[256];
  std::snprintf(buf, sizeof(buf), "sweep: %zu rows%s",
                s.sweep_f_bars.size(), all_ok ? "" : " (with failures)");
  log << buf << '\n';
  return all_ok ? RunStatus::ok : RunStatus::infeasible;
}

}  // namespace

RunStatus run_scenario(const Scenario& s, std::ostream& log) {
  Materialized m = materialize(s, log);
  fs::path dir(s.output_dir);
  switch (s.run) {
    case RunKind::r0: return run_r0(s, m, dir, log);
    case RunKind::steady: return run_steady(s, m, dir, log);
    case RunKind::simulate: return run_simulate(s, m, dir, log);
    case RunKind::lyapunov: return run_lyapunov(s, m, dir, log);
    case RunKind::vaccinate: return run_vaccinate(s, m, dir, log);
    case RunKind::sweep: return run_sweep(s, m, dir, log);
  }
  throw Error("run_scenario: unreachable");
}

}  // namespace seqir
