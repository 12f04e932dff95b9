#include "aniso/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int dispatch(const std::string& command, const std::string& path, const std::string& output_dir,
             bool quiet) {
  try {
    aniso::RunConfig config = aniso::load_config(path);
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (command == "run") return aniso::run(config, std::cout, std::cerr, quiet);
    if (command == "sweep") return aniso::sweep(config, std::cout, std::cerr, quiet);
    return aniso::study(config, std::cout, std::cerr, quiet);
  } catch (const aniso::ConfigError& e) {
    std::cerr << path << ": config error: " << e.what() << "\n";
    return 1;
  } catch (const aniso::ConvexityError& e) {
    std::cerr << path << ": config error: /anisotropy: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << path << ": config error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << path << ": config error: /surface: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic extrinsic radius verification toolkit"};
  std::string output_dir;
  bool quiet = false;
  app.add_option("--output-dir", output_dir, "Override the output directory of the config");
  app.add_flag("--quiet", quiet, "Only print violations and errors");
  app.require_subcommand(1);
  app.fallthrough();

  std::string path;
  for (const char* name : {"run", "study", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", path, "JSON config file")->required();
  }
  app.get_subcommand("run")->description("Verify one configuration at every resolution and sweep value");
  app.get_subcommand("study")->description("Observed refinement orders over the configured resolutions");
  app.get_subcommand("sweep")->description("Run a parameter sweep and write sweep.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return dispatch(app.get_subcommands().front()->get_name(), path, output_dir, quiet);
}
