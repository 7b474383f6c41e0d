#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace cgnls::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_config = 2,
  exit_blow_up = 3,
  exit_spectral_singularity = 4,
  exit_non_simple_zero = 5,
};

struct RunContext {
  std::string command;
  std::filesystem::path out_dir;
  bool verbose = false;
};

int cmd_simulate(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_scatter(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_solitons(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_asymptote(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_compare(const ExperimentConfig& cfg, const RunContext& ctx);
int cmd_pcf(const ExperimentConfig& cfg, const RunContext& ctx);

}  // namespace cgnls::cli
