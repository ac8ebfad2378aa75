#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "seqir/scenario.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw seqir::Error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string context(const std::string& config, const std::string& run) {
  return config + (run.empty() ? "" : " [" + run + "]") + ": ";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-structured SEQIR epidemic analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int grid_n = 0;
  double a_max = 0.0;

  CLI::App* run = app.add_subcommand("run", "run a scenario and write artifacts");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  run->add_option("--grid-n", grid_n, "override grid node count");
  run->add_option("--a-max", a_max, "override age-axis truncation (years)");

  CLI::App* validate = app.add_subcommand("validate", "validate a config file");
  validate->add_option("config", config_path, "scenario config file")->required();

  CLI11_PARSE(app, argc, argv);

  std::string run_name;
  try {
    std::string text = slurp(config_path);
    if (validate->parsed()) {
      seqir::ValidationResult result = seqir::validate_config(text);
      if (result.scenario) {
        std::cout << "ok: " << config_path << " (run = "
                  << seqir::run_kind_name(result.scenario->run) << ")\n";
        return 0;
      }
      std::cerr << "invalid config:\n";
      for (const std::string& d : result.diagnostics) std::cerr << "  " << d << "\n";
      return 1;
    }

    seqir::Scenario scenario = seqir::parse_config(text);
    if (!out_dir.empty()) scenario.output_dir = out_dir;
    if (grid_n > 0) scenario.n = grid_n;
    if (a_max > 0.0) scenario.a_max = a_max;
    run_name = seqir::run_kind_name(scenario.run);
    seqir::RunStatus status = seqir::run_scenario(scenario, std::cout);
    return static_cast<int>(status);
  } catch (const seqir::ConfigError& err) {
    std::cerr << config_path << ": config error: " << err.what() << "\n";
    return 1;
  } catch (const seqir::Infeasible& err) {
    std::cerr << context(config_path, run_name) << "infeasible: " << err.what()
              << "\n";
    return 2;
  } catch (const seqir::NotConverged& err) {
    std::cerr << context(config_path, run_name) << "not converged: " << err.what()
              << "\n";
    return 2;
  } catch (const seqir::NoBracket& err) {
    std::cerr << context(config_path, run_name) << "infeasible: " << err.what()
              << "\n";
    return 2;
  } catch (const seqir::Error& err) {
    std::cerr << context(config_path, run_name) << "error: " << err.what() << "\n";
    return 1;
  }
}
