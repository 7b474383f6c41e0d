#include "cgnls/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cgnls/errors.hpp"

namespace cgnls {

using nlohmann::json;

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + "." + key + ": missing");
  return j.at(key);
}

json entries_json(const std::vector<SolitonEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back({{"z", complex_json(e.z)}, {"c", complex_json(e.c)}});
  return arr;
}

std::vector<SolitonEntry> entries_from(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<SolitonEntry> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    out.push_back({complex_from(require(arr[i], "z", w), w + ".z"), complex_from(require(arr[i], "c", w), w + ".c")});
  }
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

void put_double(std::ostream& os, double d) {
  auto bits = std::bit_cast<std::uint64_t>(d);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_double(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const std::string& ext) {
  return std::filesystem::path(base.string() + ext);
}

}  // namespace

std::string version_string() { return "0.1.0"; }

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string Metadata::to_json() const {
  json j{{"tool", tool}, {"version", version}, {"command", command}, {"config_hash", config_hash}};
  return j.dump();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_complex_binary(const std::filesystem::path& path, const CVec& values) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (cplx z : values) {
    put_double(out, z.real());
    put_double(out, z.imag());
  }
}

CVec read_complex_binary(const std::filesystem::path& path) {
  std::string raw = read_text(path);
  if (raw.size() % 16 != 0) throw ConfigError(path.string() + ": size is not a multiple of 16 bytes");
  CVec out(raw.size() / 16);
  auto bytes = reinterpret_cast<const unsigned char*>(raw.data());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {get_double(bytes + 16 * i), get_double(bytes + 16 * i + 8)};
  return out;
}

void write_snapshot(const std::filesystem::path& base, const FieldState& state, const std::string& scheme,
                    const Metadata& meta) {
  state.check_shape();
  CVec both = state.u;
  both.insert(both.end(), state.v.begin(), state.v.end());
  write_complex_binary(with_suffix(base, ".bin"), both);
  json j{{"metadata", json::parse(meta.to_json())},
         {"t", state.t},
         {"grid", {{"x_min", state.grid.x_min()}, {"x_max", state.grid.x_max()}, {"n", state.grid.n_points()}}},
         {"params", {{"alpha", state.params.alpha}, {"beta", state.params.beta}, {"gamma", state.params.gamma}}},
         {"scheme", scheme}};
  write_text(with_suffix(base, ".json"), j.dump(2));
}

FieldState read_snapshot(const std::filesystem::path& base) {
  json j = parse(read_text(with_suffix(base, ".json")));
  const json& g = require(j, "grid", "snapshot");
  const json& p = require(j, "params", "snapshot");
  FieldState s;
  s.grid = SpatialGrid(require(g, "x_min", "snapshot.grid").get<double>(),
                       require(g, "x_max", "snapshot.grid").get<double>(),
                       require(g, "n", "snapshot.grid").get<std::size_t>());
  s.t = require(j, "t", "snapshot").get<double>();
  s.params = {require(p, "alpha", "snapshot.params").get<double>(), require(p, "beta", "snapshot.params").get<double>(),
              require(p, "gamma", "snapshot.params").get<double>()};
  CVec both = read_complex_binary(with_suffix(base, ".bin"));
  const std::size_t n = s.grid.n_points();
  if (both.size() != 2 * n) throw ConfigError("snapshot binary does not match the grid size");
  s.u.assign(both.begin(), both.begin() + static_cast<std::ptrdiff_t>(n));
  s.v.assign(both.begin() + static_cast<std::ptrdiff_t>(n), both.end());
  return s;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, const Metadata& meta) {
  std::ostringstream os;
  os << "# " << meta.to_json() << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n" << std::setprecision(17);
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw DomainError("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  write_text(path, os.str());
}

void write_state_csv(const std::filesystem::path& path, const FieldState& state, const Metadata& meta) {
  state.check_shape();
  std::vector<std::vector<double>> rows;
  rows.reserve(state.u.size());
  for (std::size_t j = 0; j < state.u.size(); ++j)
    rows.push_back({state.grid.x(j), state.u[j].real(), state.u[j].imag(), state.v[j].real(), state.v[j].imag()});
  write_csv(path, {"x", "u_re", "u_im", "v_re", "v_im"}, rows, meta);
}

std::string scattering_to_json(const ScatteringData& data, const Metadata* meta) {
  json r = json::array();
  for (cplx z : data.r) r.push_back(complex_json(z));
  json j{{"z_grid", data.z_grid}, {"r", r}, {"discrete", entries_json(data.discrete)}};
  if (meta) j["metadata"] = json::parse(meta->to_json());
  return j.dump(1);
}

ScatteringData scattering_from_json(const std::string& text) {
  json j = parse(text);
  ScatteringData d;
  const json& zg = require(j, "z_grid", "scattering");
  if (!zg.is_array()) throw ConfigError("scattering.z_grid: expected an array");
  for (const auto& z : zg) d.z_grid.push_back(z.get<double>());
  const json& r = require(j, "r", "scattering");
  if (!r.is_array()) throw ConfigError("scattering.r: expected an array");
  for (std::size_t i = 0; i < r.size(); ++i) d.r.push_back(complex_from(r[i], "scattering.r[" + std::to_string(i) + "]"));
  if (j.contains("discrete")) d.discrete = entries_from(j.at("discrete"), "scattering.discrete");
  d.validate();
  return d;
}

std::string solitons_to_json(const SolitonData& data, const Metadata* meta) {
  json j{{"entries", entries_json(data.entries)}};
  if (meta) j["metadata"] = json::parse(meta->to_json());
  return j.dump(1);
}

SolitonData solitons_from_json(const std::string& text) {
  json j = parse(text);
  SolitonData d{entries_from(require(j, "entries", "solitons"), "solitons.entries")};
  d.validate();
  return d;
}

void save_scattering(const std::filesystem::path& path, const ScatteringData& data, const Metadata& meta) {
  write_text(path, scattering_to_json(data, &meta));
}

ScatteringData load_scattering(const std::filesystem::path& path) { return scattering_from_json(read_text(path)); }

void save_solitons(const std::filesystem::path& path, const SolitonData& data, const Metadata& meta) {
  write_text(path, solitons_to_json(data, &meta));
}

SolitonData load_solitons(const std::filesystem::path& path) { return solitons_from_json(read_text(path)); }

}  // namespace cgnls
