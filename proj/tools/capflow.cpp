// capflow — simulate the area-preserving (and related) curvature flows of a
// rotationally symmetric surface between two parallel slabs, verify the
// conserved/monotone/bounded quantities along the way, and classify the
// limit shape.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "capflow/cli.hpp"
#include "capflow/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"area-preserving curvature flow laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string grid_path;

  CLI::App* simulate = app.add_subcommand("simulate", "run one simulation");
  simulate->add_option("--config", config_path, "run configuration file")->required();

  CLI::App* validate = app.add_subcommand("validate", "report on the initial data");
  validate->add_option("--config", config_path, "run configuration file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "cartesian parameter sweep");
  sweep->add_option("--config", config_path, "template configuration file")->required();
  sweep->add_option("--grid", grid_path, "parameter grid file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const capflow::SimConfig cfg =
          capflow::parse_config(capflow::read_text_file(config_path));
      return capflow::cmd_simulate(cfg, std::cout);
    }
    if (validate->parsed()) {
      const capflow::SimConfig cfg =
          capflow::parse_config(capflow::read_text_file(config_path));
      return capflow::cmd_validate(cfg, std::cout);
    }
    if (sweep->parsed()) {
      const capflow::ConfigMap base =
          capflow::parse_key_values(capflow::read_text_file(config_path));
      const capflow::SweepGrid grid =
          capflow::parse_grid(capflow::read_text_file(grid_path));
      return capflow::cmd_sweep(base, grid, std::cout);
    }
  } catch (const capflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const capflow::ScenarioError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
