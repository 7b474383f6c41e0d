#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cgnls/asymptotics.hpp"
#include "cgnls/pde.hpp"
#include "cgnls/scattering.hpp"
#include "cgnls/types.hpp"

namespace cgnls::cli {

// Read-only view of a JSON value that remembers its path for error messages.
class Node {
 public:
  Node(const nlohmann::json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const nlohmann::json& json() const { return *value_; }
  bool has(const std::string& key) const;
  Node at(const std::string& key) const;
  Node at(std::size_t index) const;
  std::size_t size() const;

  double number() const;
  double number(const std::string& key) const { return at(key).number(); }
  double number(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  cplx complex() const;
  cplx complex(const std::string& key) const { return at(key).complex(); }
  std::vector<double> numbers(const std::string& key) const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const nlohmann::json* value_;
  std::string path_;
};

enum class InitialKind { zero, sech, gaussian, solitons, snapshot };

struct InitialConfig {
  InitialKind kind = InitialKind::zero;
  double amplitude = 1.0;
  double wavenumber = 0.0;
  double center = 0.0;
  double width = 1.0;
  SolitonData solitons;
  std::filesystem::path snapshot;
};

struct SimulationConfig {
  SolverConfig solver;
  double t_end = 0.0;
  // time between written snapshots; 0 writes only the final state
  double snapshot_every = 0.0;
  // steps between conservation reports
  int conservation_stride = 10;
};

struct ScatterConfig {
  double z_min = -8.0;
  double z_max = 8.0;
  std::size_t n_z = 801;
  SearchBox box;
  ScatteringOptions options;
  std::optional<std::filesystem::path> data_file;
};

struct Ray {
  double x0 = 0.0;
  double velocity = 0.0;
};

struct AsymptoteConfig {
  ConeSpec cone;
  std::vector<double> times;
  std::vector<Ray> rays;
  AsymptoticOptions options;
};

struct CompareConfig {
  std::filesystem::path snapshot;
  std::optional<std::filesystem::path> reference;
};

struct PcfConfig {
  std::vector<cplx> orders;
  double z_min = -5.0;
  double z_max = 5.0;
  std::size_t n_z = 101;
  std::vector<cplx> r0;
  std::vector<double> radii{0.5, 2.0, 10.0};
  double moment_radius = 100.0;
};

struct ExperimentConfig {
  std::string text;
  nlohmann::json document;
  SpatialGrid grid;
  EquationParams params;
  InitialConfig initial;
  SimulationConfig simulation;
  ScatterConfig scatter;
  AsymptoteConfig asymptote;
  CompareConfig compare;
  PcfConfig pcf;
  std::vector<double> soliton_times;
};

// Parses and validates the blocks a command needs; throws ConfigError
// naming the offending field.
ExperimentConfig load_config(const std::filesystem::path& path, const std::string& command);
ExperimentConfig parse_config(const std::string& text, const std::string& command);

}  // namespace cgnls::cli
