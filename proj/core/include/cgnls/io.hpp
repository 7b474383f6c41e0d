#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cgnls/types.hpp"

namespace cgnls {

std::string version_string();

// 64-bit FNV-1a digest rendered as 16 hex digits
std::string fnv1a_hex(const std::string& text);

struct Metadata {
  std::string tool = "cgnls";
  std::string version = version_string();
  std::string command;
  std::string config_hash;

  std::string to_json() const;
};

// complex samples as little-endian interleaved (re, im) doubles
void write_complex_binary(const std::filesystem::path& path, const CVec& values);
CVec read_complex_binary(const std::filesystem::path& path);

// `<base>.bin` holds u followed by v; `<base>.json` holds t, grid, params and scheme
void write_snapshot(const std::filesystem::path& base, const FieldState& state, const std::string& scheme = "",
                    const Metadata& meta = {});
FieldState read_snapshot(const std::filesystem::path& base);

// metadata comment line, a header row and one row per entry
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, const Metadata& meta = {});
void write_state_csv(const std::filesystem::path& path, const FieldState& state, const Metadata& meta = {});

std::string scattering_to_json(const ScatteringData& data, const Metadata* meta = nullptr);
ScatteringData scattering_from_json(const std::string& text);
std::string solitons_to_json(const SolitonData& data, const Metadata* meta = nullptr);
SolitonData solitons_from_json(const std::string& text);

void save_scattering(const std::filesystem::path& path, const ScatteringData& data, const Metadata& meta = {});
ScatteringData load_scattering(const std::filesystem::path& path);
void save_solitons(const std::filesystem::path& path, const SolitonData& data, const Metadata& meta = {});
SolitonData load_solitons(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cgnls
