#include "config.hpp"

#include <cmath>

#include "cgnls/errors.hpp"
#include "cgnls/io.hpp"
#include "cgnls/special.hpp"

namespace cgnls::cli {

using nlohmann::json;

bool Node::has(const std::string& key) const { return value_->is_object() && value_->contains(key); }

Node Node::at(const std::string& key) const {
  if (!value_->is_object()) fail("expected an object");
  if (!value_->contains(key)) throw ConfigError(path_ + "." + key + ": missing required field");
  return Node(value_->at(key), path_ + "." + key);
}

Node Node::at(std::size_t index) const {
  if (!value_->is_array() || index >= value_->size()) fail("index out of range");
  return Node((*value_)[index], path_ + "[" + std::to_string(index) + "]");
}

std::size_t Node::size() const {
  if (!value_->is_array()) fail("expected an array");
  return value_->size();
}

double Node::number() const {
  if (!value_->is_number()) fail("expected a number");
  const double d = value_->get<double>();
  if (!std::isfinite(d)) fail("must be finite");
  return d;
}

double Node::number(const std::string& key, double fallback) const {
  return has(key) ? at(key).number() : fallback;
}

std::size_t Node::count(const std::string& key) const {
  const Node n = at(key);
  if (!n.json().is_number_integer() || n.json().get<long long>() < 0) n.fail("expected a non-negative integer");
  return n.json().get<std::size_t>();
}

std::size_t Node::count(const std::string& key, std::size_t fallback) const {
  return has(key) ? count(key) : fallback;
}

int Node::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const Node n = at(key);
  if (!n.json().is_number_integer()) n.fail("expected an integer");
  return n.json().get<int>();
}

bool Node::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Node n = at(key);
  if (!n.json().is_boolean()) n.fail("expected true or false");
  return n.json().get<bool>();
}

std::string Node::text(const std::string& key) const {
  const Node n = at(key);
  if (!n.json().is_string()) n.fail("expected a string");
  return n.json().get<std::string>();
}

std::string Node::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

cplx Node::complex() const {
  if (value_->is_number()) return {number(), 0.0};
  if (!value_->is_array() || value_->size() != 2) fail("expected [re, im]");
  return {at(std::size_t{0}).number(), at(std::size_t{1}).number()};
}

std::vector<double> Node::numbers(const std::string& key) const {
  const Node n = at(key);
  std::vector<double> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(n.at(i).number());
  return out;
}

void Node::fail(const std::string& message) const { throw ConfigError(path_ + ": " + message); }

namespace {

bool needs_initial(const std::string& command) {
  return command == "simulate" || command == "scatter" || command == "asymptote";
}

SpatialGrid parse_grid(const Node& n) {
  const double lo = n.number("x_min");
  const double hi = n.number("x_max");
  const std::size_t points = n.count("n");
  if (!(hi > lo)) n.fail("x_max must exceed x_min");
  if (points < 4 || points % 2 != 0) n.at("n").fail("must be an even integer >= 4");
  return SpatialGrid(lo, hi, points);
}

EquationParams parse_params(const Node& root) {
  if (!root.has("params")) return {};
  const Node n = root.at("params");
  return {n.number("alpha", 0.0), n.number("beta", 0.0), n.number("gamma", 0.0)};
}

SolitonData parse_solitons(const Node& n) {
  SolitonData data;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const Node e = n.at(i);
    const cplx z = e.complex("z");
    if (!(z.imag() > 0.0)) e.at("z").fail("eigenvalue must lie in the upper half-plane");
    const cplx c = e.complex("c");
    if (c == 0.0) e.at("c").fail("norming constant must be nonzero");
    data.entries.push_back({z, c});
  }
  return data;
}

InitialConfig parse_initial(const Node& n) {
  InitialConfig out;
  if (n.has("snapshot")) {
    out.kind = InitialKind::snapshot;
    out.snapshot = n.text("snapshot");
    return out;
  }
  if (n.has("solitons")) {
    out.kind = InitialKind::solitons;
    out.solitons = parse_solitons(n.at("solitons"));
    return out;
  }
  const std::string preset = n.text("preset");
  if (preset == "zero") {
    out.kind = InitialKind::zero;
  } else if (preset == "sech") {
    out.kind = InitialKind::sech;
  } else if (preset == "gaussian") {
    out.kind = InitialKind::gaussian;
  } else {
    n.at("preset").fail("unknown preset '" + preset + "' (zero, sech, gaussian)");
  }
  out.amplitude = n.number("amplitude", 1.0);
  out.wavenumber = n.number("wavenumber", 0.0);
  out.center = n.number("center", 0.0);
  out.width = n.number("width", 1.0);
  if (!(out.width > 0.0)) n.at("width").fail("must be positive");
  return out;
}

SimulationConfig parse_simulation(const Node& n) {
  SimulationConfig out;
  out.solver.dt = n.number("dt");
  if (!(out.solver.dt > 0.0)) n.at("dt").fail("must be positive");
  out.solver.scheme = n.has("scheme") ? scheme_from_string(n.text("scheme")) : Scheme::if_rk4;
  out.solver.dealias = n.flag("dealias", true);
  out.t_end = n.number("t_end", 0.0);
  if (out.t_end < 0.0) n.at("t_end").fail("must be non-negative");
  out.snapshot_every = n.number("snapshot_every", 0.0);
  if (out.snapshot_every < 0.0) n.at("snapshot_every").fail("must be non-negative");
  out.conservation_stride = n.integer("conservation_stride", 10);
  if (out.conservation_stride < 1) n.at("conservation_stride").fail("must be positive");
  return out;
}

ScatterConfig parse_scatter(const Node& root) {
  ScatterConfig out;
  if (!root.has("scatter")) return out;
  const Node n = root.at("scatter");
  if (n.has("data")) out.data_file = n.text("data");
  out.z_min = n.number("z_min", out.z_min);
  out.z_max = n.number("z_max", out.z_max);
  out.n_z = n.count("n_z", out.n_z);
  if (!(out.z_max > out.z_min)) n.fail("z_max must exceed z_min");
  if (out.n_z < 2) n.at("n_z").fail("must be at least 2");
  if (n.has("box")) {
    const Node b = n.at("box");
    out.box = {b.number("re_min"), b.number("re_max"), b.number("im_min"), b.number("im_max")};
    if (!(out.box.re_max > out.box.re_min) || !(out.box.im_max > out.box.im_min) || !(out.box.im_min > 0.0))
      b.fail("box must be a nondegenerate rectangle in the open upper half-plane");
  }
  out.options.substeps = n.integer("substeps", out.options.substeps);
  out.options.edge_points = n.integer("edge_points", out.options.edge_points);
  return out;
}

AsymptoticOptions parse_options(const Node& n) {
  AsymptoticOptions o;
  if (!n.has("options")) return o;
  const Node p = n.at("options");
  o.branch = p.integer("branch", 1);
  if (o.branch != 1 && o.branch != -1) p.at("branch").fail("must be +1 or -1");
  const std::string theta = p.text("theta_form", "derived");
  if (theta == "derived") {
    o.theta_form = ThetaForm::derived;
  } else if (theta == "printed") {
    o.theta_form = ThetaForm::printed;
  } else if (theta == "printed_imaginary") {
    o.theta_form = ThetaForm::printed_imaginary;
  } else {
    p.at("theta_form").fail("expected derived, printed or printed_imaginary");
  }
  const std::string cross = p.text("cross_coefficient", "inv_sqrt2");
  if (cross == "inv_sqrt2") {
    o.cross_coefficient = CrossCoefficient::inv_sqrt2;
  } else if (cross == "inv_2sqrt2") {
    o.cross_coefficient = CrossCoefficient::inv_2sqrt2;
  } else {
    p.at("cross_coefficient").fail("expected inv_sqrt2 or inv_2sqrt2");
  }
  o.cross_sign = p.integer("cross_sign", -1);
  if (o.cross_sign != 1 && o.cross_sign != -1) p.at("cross_sign").fail("must be +1 or -1");
  const std::string constant = p.text("theta_constant", "half_gamma");
  if (constant == "half_gamma") {
    o.theta_constant = ThetaConstant::half_gamma;
  } else if (constant == "full_gamma") {
    o.theta_constant = ThetaConstant::full_gamma;
  } else {
    p.at("theta_constant").fail("expected half_gamma or full_gamma");
  }
  o.t_min = p.number("t_min", o.t_min);
  o.gauge_density = p.number("gauge_density", o.gauge_density);
  o.gauge_span = p.number("gauge_span", o.gauge_span);
  if (!(o.gauge_density > 0.0)) p.at("gauge_density").fail("must be positive");
  if (!(o.gauge_span > 0.0)) p.at("gauge_span").fail("must be positive");
  return o;
}

AsymptoteConfig parse_asymptote(const Node& n) {
  AsymptoteConfig out;
  const Node c = n.at("cone");
  out.cone = {c.number("x1"), c.number("x2"), c.number("v1"), c.number("v2")};
  if (!(out.cone.x2 >= out.cone.x1)) c.fail("x2 must not be below x1");
  if (!(out.cone.v2 >= out.cone.v1)) c.fail("v2 must not be below v1");
  out.times = n.numbers("times");
  if (out.times.empty()) n.at("times").fail("must not be empty");
  for (std::size_t i = 1; i < out.times.size(); ++i)
    if (!(out.times[i] > out.times[i - 1])) n.at("times").fail("must be strictly increasing");
  const Node rays = n.at("rays");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const Node r = rays.at(i);
    out.rays.push_back({r.number("x0"), r.number("velocity")});
  }
  if (out.rays.empty()) rays.fail("must not be empty");
  out.options = parse_options(n);
  return out;
}

PcfConfig parse_pcf(const Node& n) {
  PcfConfig out;
  const Node orders = n.at("orders");
  for (std::size_t i = 0; i < orders.size(); ++i) out.orders.push_back(orders.at(i).complex());
  out.z_min = n.number("z_min", out.z_min);
  out.z_max = n.number("z_max", out.z_max);
  out.n_z = n.count("n_z", out.n_z);
  if (!(out.z_max > out.z_min) || out.n_z < 2) n.fail("need z_min < z_max and n_z >= 2");
  if (std::max(std::abs(out.z_min), std::abs(out.z_max)) > pcf_max_abs_z)
    n.fail("|z| beyond the supported range " + std::to_string(pcf_max_abs_z));
  if (n.has("r0")) {
    const Node r = n.at("r0");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const cplx v = r.at(i).complex();
      if (!(std::abs(v) < 1.0)) r.at(i).fail("|r0| must be below 1");
      out.r0.push_back(v);
    }
  }
  if (n.has("radii")) out.radii = n.numbers("radii");
  for (double rho : out.radii)
    if (!(rho > 0.0)) n.at("radii").fail("radii must be positive");
  out.moment_radius = n.number("moment_radius", out.moment_radius);
  if (!(out.moment_radius > 0.0)) n.at("moment_radius").fail("must be positive");
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& command) {
  ExperimentConfig cfg;
  cfg.text = text;
  try {
    cfg.document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  const Node root(cfg.document, "config");
  if (!cfg.document.is_object()) root.fail("expected an object");
  cfg.params = parse_params(root);

  if (command == "pcf") {
    cfg.pcf = parse_pcf(root.at("pcf"));
    return cfg;
  }
  if (command == "compare") {
    const Node c = root.at("compare");
    cfg.compare.snapshot = c.text("snapshot");
    if (c.has("reference")) cfg.compare.reference = c.text("reference");
    if (!cfg.compare.reference) {
      if (!root.has("initial") || !root.at("initial").has("solitons"))
        c.fail("needs 'reference' or initial.solitons for the closed-form reference");
      cfg.initial = parse_initial(root.at("initial"));
    }
    return cfg;
  }

  const bool from_file = command == "scatter" && root.has("scatter") && root.at("scatter").has("data");
  const bool snapshot_initial = root.has("initial") && root.at("initial").has("snapshot");
  if (!snapshot_initial) cfg.grid = parse_grid(root.at("grid"));
  if (needs_initial(command) && !from_file) cfg.initial = parse_initial(root.at("initial"));

  if (command == "simulate") {
    cfg.simulation = parse_simulation(root.at("solver"));
    if (!(cfg.simulation.t_end > 0.0)) root.at("solver").at("t_end").fail("must be positive");
  } else if (command == "scatter") {
    cfg.scatter = parse_scatter(root);
  } else if (command == "asymptote") {
    cfg.simulation = parse_simulation(root.at("solver"));
    cfg.scatter = parse_scatter(root);
    cfg.asymptote = parse_asymptote(root.at("asymptote"));
  } else if (command == "solitons") {
    cfg.initial.kind = InitialKind::solitons;
    cfg.initial.solitons = parse_solitons(root.at("solitons"));
    cfg.soliton_times = root.has("times") ? root.numbers("times") : std::vector<double>{0.0};
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::string& command) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const std::exception&) {
    throw ConfigError("config: cannot read " + path.string());
  }
  return parse_config(text, command);
}

}  // namespace cgnls::cli
