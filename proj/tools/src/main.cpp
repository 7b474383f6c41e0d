#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "cgnls/errors.hpp"
#include "cgnls/parallel.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace cgnls;
using namespace cgnls::cli;

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver, scattering and long-time asymptotics for a coupled NLS system"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
  bool verbose = false;

  const std::map<std::string, std::pair<std::string, std::function<int(const ExperimentConfig&, const RunContext&)>>>
      verbs = {
          {"simulate", {"integrate the evolution equations and write snapshots", cmd_simulate}},
          {"scatter", {"direct scattering: reflection coefficient and discrete spectrum", cmd_scatter}},
          {"solitons", {"evaluate the reflectionless solution for given discrete data", cmd_solitons}},
          {"asymptote", {"compare a simulation with the long-time prediction in a cone", cmd_asymptote}},
          {"compare", {"compare a snapshot with a reference snapshot or closed form", cmd_compare}},
          {"pcf", {"parabolic cylinder functions and model-problem residuals", cmd_pcf}},
      };
  for (const auto& [name, entry] : verbs) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "JSON experiment configuration")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--verbose", verbose, "progress messages on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    set_thread_count(threads);
    const ExperimentConfig cfg = load_config(config_path, command);
    std::filesystem::create_directories(out_dir);
    return verbs.at(command).second(cfg, RunContext{command, out_dir, verbose});
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return exit_blow_up;
  } catch (const SpectralSingularity& e) {
    std::cerr << "spectral singularity: " << e.what() << "\n";
    return exit_spectral_singularity;
  } catch (const AssumptionViolation& e) {
    std::cerr << "non-simple zero: " << e.what() << "\n";
    return exit_non_simple_zero;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_internal;
  }
}
