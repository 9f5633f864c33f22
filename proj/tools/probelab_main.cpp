// Command-line harness: runs one named experiment preset and writes its CSV.
//
//   probelab <experiment> [--config <file>] [--set key=value]... [--out <csv>]
//
// Exit codes: 0 success, 2 configuration/usage error (bad key, bad value,
// unknown experiment, unreadable file), 3 identity-audit violations.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probelab/config.hpp"
#include "probelab/errors.hpp"
#include "probelab/experiments.hpp"

namespace {

std::string catalog_lines() {
  std::ostringstream out;
  for (const std::string& name : probelab::experiment_catalog()) out << "  " << name << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear-probing hash-table analysis experiments"};
  app.footer("experiments:\n" + catalog_lines());

  std::string experiment;
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;

  app.add_option("experiment", experiment, "experiment preset name")->required();
  app.add_option("--config", config_path, "key-value config file (`key = value` lines)");
  app.add_option("--set", overrides, "config override key=value (repeatable)");
  app.add_option("--out", out_path, "output CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    probelab::KeyValueConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 2;
      }
      config = probelab::KeyValueConfig::parse(in);
    }
    for (const std::string& assignment : overrides) config.set(assignment);

    const probelab::ExperimentResult result = probelab::run_experiment(experiment, config);

    if (out_path.empty()) {
      probelab::write_csv(std::cout, result.rows);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 2;
      }
      probelab::write_csv(out, result.rows);
    }

    if (result.violations > 0) {
      std::cerr << "identity audit reported " << result.violations << " violating window(s)\n";
      return 3;
    }
    return 0;
  } catch (const probelab::UnknownExperimentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const probelab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const probelab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
