#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqir/transient.hpp"

namespace seqir {

enum class RunKind { simulate, steady, r0, lyapunov, vaccinate, sweep };

/// A named profile shape from the config file: either a constant, an
/// exponential scale*exp(rate*a), or a piecewise-linear breakpoint list.
struct ProfileSpec {
  enum class Kind { constant, exponential, piecewise };
  Kind kind = Kind::constant;
  double value = 0.0;
  double scale = 0.0;
  double rate = 0.0;
  std::vector<std::pair<double, double>> points;

  Profile materialize(const GridPtr& grid) const;
  bool is_constant() const { return kind == Kind::constant; }
};

struct Scenario {
  RunKind run = RunKind::r0;
  std::string output_dir = "out";

  double a_max = 100.0;
  int n = 2001;

  ProfileSpec mu;
  ProfileSpec beta;  // defaults to mu, keeping the net reproduction rate at 1

  double mu1 = 0.0, q1 = 0.0, gamma1 = 0.0, gamma2 = 0.0, gamma = 0.0;
  ProfileSpec k1, k2;

  SeedSpec seed;
  double simulate_t_end = 150.0;
  double lyapunov_t_end = 300.0;
  double stride_years = 1.0;

  bool costs_given = false;
  ProfileSpec g1, g2, f;
  double F_bar = 0.0;
  double vaccinate_tol = 1e-8;
  std::vector<double> sweep_f_bars;
};

struct ValidationResult {
  std::optional<Scenario> scenario;
  std::vector<std::string> diagnostics;  // every violation, not just the first
};

/// Full validation before any computation.
ValidationResult validate_config(const std::string& text);

/// validate_config or ConfigError carrying all diagnostics.
Scenario parse_config(const std::string& text);

enum class RunStatus : int { ok = 0, config_error = 1, infeasible = 2 };

/// Executes the scenario, writing {run}.csv / {run}.json into the output
/// directory and a one-line summary to `log`.
RunStatus run_scenario(const Scenario& s, std::ostream& log);

std::string run_kind_name(RunKind k);

}  // namespace seqir
