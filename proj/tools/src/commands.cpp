#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cgnls/asymptotics.hpp"
#include "cgnls/errors.hpp"
#include "cgnls/fourier.hpp"
#include "cgnls/io.hpp"
#include "cgnls/parallel.hpp"
#include "cgnls/pcmodel.hpp"
#include "cgnls/pde.hpp"
#include "cgnls/scattering.hpp"
#include "cgnls/soliton.hpp"
#include "cgnls/special.hpp"

namespace cgnls::cli {

using nlohmann::json;

namespace {

Metadata metadata(const ExperimentConfig& cfg, const RunContext& ctx) {
  Metadata m;
  m.command = ctx.command;
  m.config_hash = fnv1a_hex(cfg.text);
  return m;
}

void log(const RunContext& ctx, const std::string& message) {
  if (ctx.verbose) std::clog << "[cgnls " << ctx.command << "] " << message << "\n";
}

void write_json(const std::filesystem::path& path, json body, const Metadata& meta) {
  body["metadata"] = json::parse(meta.to_json());
  write_text(path, body.dump(2) + "\n");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string snapshot_name(std::size_t index) {
  std::ostringstream os;
  os << "snapshot_" << std::setw(4) << std::setfill('0') << index;
  return os.str();
}

// u0 for the presets, with v = −conj(u) (focusing reduction)
FieldState initial_state(const ExperimentConfig& cfg) {
  const InitialConfig& in = cfg.initial;
  switch (in.kind) {
    case InitialKind::snapshot:
      return read_snapshot(in.snapshot);
    case InitialKind::solitons:
      return make_initial_data(in.solitons, cfg.grid, cfg.params);
    default:
      break;
  }
  FieldState s = FieldState::zeros(cfg.grid, cfg.params);
  if (in.kind == InitialKind::zero) return s;
  for (std::size_t j = 0; j < cfg.grid.n_points(); ++j) {
    const double y = (cfg.grid.x(j) - in.center) / in.width;
    const double envelope = in.kind == InitialKind::sech ? 1.0 / std::cosh(y) : std::exp(-y * y);
    s.u[j] = in.amplitude * envelope * std::exp(cplx{0.0, in.wavenumber * cfg.grid.x(j)});
    s.v[j] = -std::conj(s.u[j]);
  }
  return s;
}

ScatteringData scattering_data(const ExperimentConfig& cfg, const FieldState& initial, const RunContext& ctx) {
  if (cfg.scatter.data_file) return load_scattering(*cfg.scatter.data_file);
  if (cfg.initial.kind == InitialKind::solitons) {
    ScatteringData d;
    d.discrete = cfg.initial.solitons.entries;
    return d;
  }
  log(ctx, "direct scattering on " + std::to_string(cfg.scatter.n_z) + " real nodes");
  const ScatteringProblem problem(initial, cfg.scatter.options);
  for (const auto& w : problem.warnings()) std::clog << "warning: " << w << "\n";
  return problem.scatter(uniform_z_grid(cfg.scatter.z_min, cfg.scatter.z_max, cfg.scatter.n_z), cfg.scatter.box);
}

double fitted_slope(const std::vector<double>& t, const std::vector<double>& e) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0.0 && e[i] > 0.0) {
      lx.push_back(std::log(t[i]));
      ly.push_back(std::log(e[i]));
    }
  }
  if (lx.size() < 2) return std::nan("");
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

json slope_json(double s) { return std::isnan(s) ? json(nullptr) : json(s); }

}  // namespace

int cmd_simulate(const ExperimentConfig& cfg, const RunContext& ctx) {
  const Metadata meta = metadata(cfg, ctx);
  FieldState state = initial_state(cfg);
  const SimulationConfig& sim = cfg.simulation;
  const std::string scheme = to_string(sim.solver.scheme);
  const double limit = stability_limit(state);
  if (sim.solver.dt > limit)
    throw ConfigError("config.solver.dt: exceeds the stability bound " + std::to_string(limit) + " of the initial data");
  Stepper stepper(state.grid, state.params, sim.solver);

  std::size_t written = 0;
  write_snapshot(ctx.out_dir / snapshot_name(written++), state, scheme, meta);
  std::deque<FieldState> window{state};
  std::vector<std::vector<double>> conservation;
  long steps = 0;
  double next_snapshot = sim.snapshot_every > 0.0 ? state.t + sim.snapshot_every : sim.t_end;
  FieldState last_good = state;
  auto observe = [&](const FieldState& s) {
    ++steps;
    last_good = s;
    window.push_back(s);
    if (window.size() > 3) window.pop_front();
    if (window.size() == 3 && steps % sim.conservation_stride == 0 &&
        std::abs((window[2].t - window[1].t) - (window[1].t - window[0].t)) < 1e-12) {
      const auto r = conservation_residual(std::vector<FieldState>(window.begin(), window.end()));
      conservation.push_back({r[0].t, r[0].law_residual, r[0].quadrature_mass});
    }
    if (sim.snapshot_every > 0.0 && s.t >= next_snapshot - 1e-9 * sim.solver.dt) {
      write_snapshot(ctx.out_dir / snapshot_name(written++), s, scheme, meta);
      next_snapshot += sim.snapshot_every;
      log(ctx, "t = " + std::to_string(s.t));
    }
  };
  int code = exit_ok;
  try {
    stepper.run(state, sim.t_end, observe);
    if (sim.snapshot_every == 0.0) write_snapshot(ctx.out_dir / snapshot_name(written++), state, scheme, meta);
  } catch (const Error& e) {
    // growth past the stability bound mid-run is reported as blow-up
    if (!dynamic_cast<const BlowUpError*>(&e) && !dynamic_cast<const DomainError*>(&e)) throw;
    std::cerr << "blow-up: " << e.what() << "\n";
    write_snapshot(ctx.out_dir / "snapshot_last_stable", last_good, scheme, meta);
    code = exit_blow_up;
  }
  write_csv(ctx.out_dir / "conservation.csv", {"t", "law_residual", "quadrature_mass"}, conservation, meta);
  write_json(ctx.out_dir / "simulate.json",
             {{"snapshots", written},
              {"steps", steps},
              {"t_final", last_good.t},
              {"scheme", scheme},
              {"dt", sim.solver.dt},
              {"blow_up", code == exit_blow_up}},
             meta);
  log(ctx, "wrote " + std::to_string(written) + " snapshots");
  return code;
}

int cmd_scatter(const ExperimentConfig& cfg, const RunContext& ctx) {
  const Metadata meta = metadata(cfg, ctx);
  ScatteringData data;
  if (cfg.scatter.data_file) {
    data = load_scattering(*cfg.scatter.data_file);
  } else {
    const FieldState initial = initial_state(cfg);
    const ScatteringProblem problem(initial, cfg.scatter.options);
    for (const auto& w : problem.warnings()) std::clog << "warning: " << w << "\n";
    data = problem.scatter(uniform_z_grid(cfg.scatter.z_min, cfg.scatter.z_max, cfg.scatter.n_z), cfg.scatter.box);
  }
  save_scattering(ctx.out_dir / "scattering.json", data, meta);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < data.z_grid.size(); ++i) {
    const cplx r = data.r[i];
    rows.push_back({data.z_grid[i], r.real(), r.imag(), std::abs(r), -std::log1p(std::norm(r)) / (2.0 * pi)});
  }
  write_csv(ctx.out_dir / "reflection.csv", {"z", "re_r", "im_r", "abs_r", "nu"}, rows, meta);
  log(ctx, "found " + std::to_string(data.discrete.size()) + " eigenvalues");
  return exit_ok;
}

int cmd_solitons(const ExperimentConfig& cfg, const RunContext& ctx) {
  const Metadata meta = metadata(cfg, ctx);
  const SolitonData& data = cfg.initial.solitons;
  save_solitons(ctx.out_dir / "solitons.json", data, meta);
  const std::size_t n = cfg.grid.n_points();
  std::vector<std::vector<double>> rows;
  for (double t : cfg.soliton_times) {
    std::vector<std::vector<double>> block(n);
    parallel_for(n, [&](std::size_t j) {
      const auto sol = nsoliton(data, cfg.grid.x(j), t, cfg.params);
      const cplx u = sol.u();
      const cplx v = sol.v();
      block[j] = {t, cfg.grid.x(j), u.real(), u.imag(), v.real(), v.imag(), std::abs(u), sol.condition};
    });
    rows.insert(rows.end(), block.begin(), block.end());
    log(ctx, "evaluated t = " + std::to_string(t));
  }
  write_csv(ctx.out_dir / "solitons.csv", {"t", "x", "re_u", "im_u", "re_v", "im_v", "abs_u", "condition"}, rows,
            meta);
  return exit_ok;
}

int cmd_asymptote(const ExperimentConfig& cfg, const RunContext& ctx) {
  const Metadata meta = metadata(cfg, ctx);
  const AsymptoteConfig& as = cfg.asymptote;
  FieldState state = initial_state(cfg);
  const ScatteringData data = scattering_data(cfg, state, ctx);
  const Predictor predictor(data, state.params, as.cone, as.options);
  AsymptoticOptions alt_options = as.options;
  alt_options.cross_coefficient = as.options.cross_coefficient == CrossCoefficient::inv_sqrt2
                                      ? CrossCoefficient::inv_2sqrt2
                                      : CrossCoefficient::inv_sqrt2;
  const Predictor alternative(data, state.params, as.cone, alt_options);

  struct Sample {
    std::size_t ray;
    double t;
    double x;
  };
  std::vector<Sample> samples;
  for (double t : as.times)
    for (std::size_t k = 0; k < as.rays.size(); ++k) {
      const double x = as.rays[k].x0 + as.rays[k].velocity * t;
      if (std::abs(t) >= as.options.t_min && in_cone(as.cone, x, t)) samples.push_back({k, t, x});
    }
  if (samples.empty()) throw ConfigError("config.asymptote: the cone contains no sample (x, t) at the given times");
  for (const auto& s : samples)
    if (s.x < state.grid.x_min() || s.x > state.grid.x_max())
      throw ConfigError("config.asymptote: sample x = " + std::to_string(s.x) + " lies outside the grid");

  Stepper stepper(state.grid, state.params, cfg.simulation.solver);
  Fourier fourier(state.grid);
  std::vector<cplx> numeric(samples.size());
  for (double t : as.times) {
    if (t < state.t) throw ConfigError("config.asymptote.times: must not precede the initial time");
    stepper.run(state, t);
    log(ctx, "simulated to t = " + std::to_string(t));
    CVec u_hat;
    fourier.forward(state.u, u_hat);
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (samples[i].t == t) numeric[i] = fourier.evaluate(u_hat, samples[i].x);
  }

  std::vector<AsymptoticValue> pred(samples.size()), alt(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    pred[i] = predictor.predict(samples[i].x, samples[i].t);
    alt[i] = alternative.predict(samples[i].x, samples[i].t);
  });

  std::vector<std::vector<double>> rows;
  json rays = json::array();
  for (std::size_t k = 0; k < as.rays.size(); ++k) {
    std::vector<double> ts, with, without, with_alt;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].ray != k) continue;
      const AsymptoticValue& p = pred[i];
      const double un = std::abs(numeric[i]);
      const double err = std::abs(numeric[i] - p.u_pred);
      const double err_sol = std::abs(numeric[i] - p.u_sol_term * p.gauge_factor);
      const double err_alt = std::abs(numeric[i] - alt[i].u_pred);
      rows.push_back({samples[i].t, samples[i].x, un, std::abs(p.u_pred), err, un > 0.0 ? err / un : 0.0,
                      static_cast<double>(k), err_sol, err_alt});
      ts.push_back(samples[i].t);
      with.push_back(err);
      without.push_back(err_sol);
      with_alt.push_back(err_alt);
    }
    const bool derived_first = as.options.cross_coefficient == CrossCoefficient::inv_sqrt2;
    rays.push_back({{"x0", as.rays[k].x0},
                    {"velocity", as.rays[k].velocity},
                    {"samples", ts.size()},
                    {"slope_without_radiation", slope_json(fitted_slope(ts, without))},
                    {"slope_with_radiation",
                     {{derived_first ? "inv_sqrt2" : "inv_2sqrt2", slope_json(fitted_slope(ts, with))},
                      {derived_first ? "inv_2sqrt2" : "inv_sqrt2", slope_json(fitted_slope(ts, with_alt))}}}});
  }
  write_csv(ctx.out_dir / "asymptote.csv",
            {"t", "x", "abs_u_num", "abs_u_pred", "abs_err", "rel_err", "ray", "abs_err_soliton_only",
             "abs_err_alt_coefficient"},
            rows, meta);
  json solitons = json::array();
  for (const auto& e : data.discrete) solitons.push_back({{"z", complex_json(e.z)}, {"c", complex_json(e.c)}});
  write_json(ctx.out_dir / "asymptote.json",
             {{"interval", {predictor.interval().lo, predictor.interval().hi}},
              {"mu", std::isinf(predictor.mu()) ? json(nullptr) : json(predictor.mu())},
              {"discrete_spectrum", solitons},
              {"rays", rays}},
             meta);
  return exit_ok;
}

int cmd_compare(const ExperimentConfig& cfg, const RunContext& ctx) {
  const Metadata meta = metadata(cfg, ctx);
  const FieldState numerical = read_snapshot(cfg.compare.snapshot);
  const FieldState reference =
      cfg.compare.reference
          ? read_snapshot(*cfg.compare.reference)
          : reflectionless_state(cfg.initial.solitons, numerical.grid, numerical.t, numerical.params);
  if (!(reference.grid == numerical.grid)) throw ConfigError("config.compare: snapshots use different grids");
  std::vector<std::vector<double>> rows;
  double max_err = 0.0;
  double diff2 = 0.0;
  double ref2 = 0.0;
  for (std::size_t j = 0; j < numerical.grid.n_points(); ++j) {
    const double err = std::abs(numerical.u[j] - reference.u[j]);
    rows.push_back({numerical.grid.x(j), std::abs(numerical.u[j]), std::abs(reference.u[j]), err});
    max_err = std::max(max_err, err);
    diff2 += err * err;
    ref2 += std::norm(reference.u[j]);
  }
  write_csv(ctx.out_dir / "compare.csv", {"x", "abs_u_num", "abs_u_ref", "abs_err"}, rows, meta);
  write_json(ctx.out_dir / "compare.json",
             {{"t", numerical.t},
              {"t_reference", reference.t},
              {"max_abs_err", max_err},
              {"rel_l2_err", ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2)}},
             meta);
  log(ctx, "max |u_num - u_ref| = " + std::to_string(max_err));
  return exit_ok;
}

int cmd_pcf(const ExperimentConfig& cfg, const RunContext& ctx) {
  const Metadata meta = metadata(cfg, ctx);
  const PcfConfig& pc = cfg.pcf;
  std::vector<std::vector<double>> values(pc.orders.size() * pc.n_z);
  parallel_for(values.size(), [&](std::size_t i) {
    const cplx a = pc.orders[i / pc.n_z];
    const std::size_t k = i % pc.n_z;
    const double z = pc.z_min + (pc.z_max - pc.z_min) * static_cast<double>(k) / static_cast<double>(pc.n_z - 1);
    const auto [d, dp] = pcf_with_derivative(a, cplx{z, 0.0});
    values[i] = {a.real(), a.imag(), z, d.real(), d.imag(), dp.real(), dp.imag()};
  });
  write_csv(ctx.out_dir / "pcf.csv", {"re_a", "im_a", "z", "re_D", "im_D", "re_dD", "im_dD"}, values, meta);

  std::vector<std::vector<double>> jumps, moments;
  json summary = json::array();
  for (std::size_t m = 0; m < pc.r0.size(); ++m) {
    const PCParams p = pc_coefficients(pc.r0[m]);
    double worst_jump = 0.0;
    for (int ray = 1; ray <= 4; ++ray) {
      const double angle = (2 * ray - 1) * pi / 4.0 - (ray > 2 ? 2.0 * pi : 0.0);
      for (double rho : pc.radii) {
        const cplx lambda = std::polar(rho, angle);
        const Mat2 plus = Mpc(lambda, p, RaySide::plus);
        const Mat2 minus = Mpc(lambda, p, RaySide::minus);
        const double residual = (plus - minus * pc_jump(lambda, ray, p)).cwiseAbs().maxCoeff();
        worst_jump = std::max(worst_jump, residual);
        jumps.push_back({static_cast<double>(m), static_cast<double>(ray), rho, residual});
      }
    }
    const Mat2 m1 = pc_moment(p);
    double worst_moment = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double angle = -pi + pi / 8.0 + k * pi / 4.0;
      const cplx lambda = std::polar(pc.moment_radius, angle);
      const Mat2 estimate = (Mpc(lambda, p) - Mat2::Identity()) * (I_unit * lambda);
      const double err12 = std::abs(estimate(0, 1) - m1(0, 1));
      const double err21 = std::abs(estimate(1, 0) - m1(1, 0));
      worst_moment = std::max({worst_moment, err12, err21});
      moments.push_back({static_cast<double>(m), angle, pc.moment_radius, estimate(0, 1).real(),
                         estimate(0, 1).imag(), p.beta12.real(), p.beta12.imag(), err12, err21});
    }
    summary.push_back({{"r0", complex_json(pc.r0[m])},
                       {"nu", p.nu},
                       {"beta12", complex_json(p.beta12)},
                       {"beta21", complex_json(p.beta21)},
                       {"max_jump_residual", worst_jump},
                       {"max_moment_error", worst_moment}});
  }
  write_csv(ctx.out_dir / "pc_jump.csv", {"case", "ray", "radius", "residual"}, jumps, meta);
  write_csv(ctx.out_dir / "pc_moment.csv",
            {"case", "angle", "radius", "re_m12", "im_m12", "re_beta12", "im_beta12", "err_12", "err_21"}, moments,
            meta);
  write_json(ctx.out_dir / "pcf.json", {{"cases", summary}}, meta);
  return exit_ok;
}

}  // namespace cgnls::cli
