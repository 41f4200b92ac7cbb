#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "job.hpp"

namespace cli = isoflect::cli;

int main(int argc, char** argv) {
  CLI::App app{"Zero mean curvature surfaces in isotropic 3-space"};
  app.require_subcommand(1, 1);

  std::string config_path;
  cli::Overrides overrides;
  app.add_option("--config", config_path, "JSON job configuration")->check(CLI::ExistingFile);
  auto opt = [&](auto& slot, const char* name, const char* help) {
    return app.add_option_function<typename std::decay_t<decltype(slot)>::value_type>(
        name, [&slot](const auto& v) { slot = v; }, help);
  };
  opt(overrides.preset, "--preset", "helicoid | isotropic-catenoid | schwarz-d");
  opt(overrides.n, "--n", "polygon parameter of the schwarz-d preset");
  opt(overrides.depth, "--depth", "tiling word length");
  opt(overrides.out, "--out", "mesh output path");
  opt(overrides.format, "--format", "obj | ply");
  opt(overrides.tol, "--tol", "quadrature tolerance");
  app.fallthrough();

  for (const auto& c : cli::commands()) app.add_subcommand(c.name, c.summary);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    cli::Json doc = config_path.empty() ? cli::Json::object() : cli::load_config_file(config_path);
    const cli::JobConfig cfg = cli::parse_config(cli::apply_overrides(std::move(doc), overrides));
    return cli::run_command(command, cfg, std::cout);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const isoflect::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const isoflect::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitFailure;
  }
}
