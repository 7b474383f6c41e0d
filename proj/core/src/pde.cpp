#include "cgnls/pde.hpp"

#include <algorithm>
#include <cmath>

#include "cgnls/errors.hpp"

namespace cgnls {

namespace {

constexpr double blow_up_level = 1e6;

double max_abs(const CVec& f) {
  double m = 0.0;
  for (const auto& x : f) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const CVec& f) {
  return std::all_of(f.begin(), f.end(),
                     [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

CVec product(const CVec& a, const CVec& b) {
  CVec p(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) p[j] = a[j] * b[j];
  return p;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::if_rk4 ? "if-rk4" : "etdrk4"; }

Scheme scheme_from_string(const std::string& name) {
  if (name == "if-rk4" || name == "ifrk4") return Scheme::if_rk4;
  if (name == "etdrk4") return Scheme::etdrk4;
  throw ConfigError("unknown scheme '" + name + "'");
}

Rates rhs(const FieldState& state) {
  state.check_shape();
  if (!all_finite(state.u) || !all_finite(state.v)) throw NonFiniteError("rhs: non-finite field values");
  const auto& p = state.params;
  Fourier fft(state.grid);
  const CVec ux = fft.derivative(state.u, 1);
  const CVec uxx = fft.derivative(state.u, 2);
  const CVec vx = fft.derivative(state.v, 1);
  const CVec vxx = fft.derivative(state.v, 2);
  const CVec w = product(state.u, state.v);
  const CVec wx = fft.derivative(w, 1);
  const std::size_t n = state.u.size();
  Rates r{CVec(n), CVec(n)};
  const double b2 = p.beta * p.beta;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx u = state.u[j];
    const cplx v = state.v[j];
    const cplx uv = w[j];
    r.du[j] = p.alpha * ux[j] + I_unit * uxx[j] - 2.0 * I_unit * u * uv + 4.0 * I_unit * b2 * u * uv * uv -
              4.0 * p.beta * wx[j] * u + I_unit * p.gamma * u;
    r.dv[j] = p.alpha * vx[j] - I_unit * vxx[j] + 2.0 * I_unit * v * uv - 4.0 * I_unit * b2 * v * uv * uv -
              4.0 * p.beta * wx[j] * v - I_unit * p.gamma * v;
  }
  return r;
}

double stability_limit(const FieldState& state) {
  const double amp = max_abs(state.u) * max_abs(state.v) * (1.0 + state.params.beta * state.params.beta);
  return std::min(0.5, state.grid.dx()) / std::max(1.0, amp);
}

Stepper::Stepper(const SpatialGrid& grid, const EquationParams& params, const SolverConfig& cfg)
    : grid_(grid), params_(params), cfg_(cfg), fft_(grid) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("solver dt must be positive");
  if (cfg.monitor_stride < 1) throw DomainError("monitor_stride must be >= 1");
  if (!params.finite()) throw DomainError("equation parameters must be finite");
  const std::size_t n = grid.n_points();
  lu_.resize(n);
  lv_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = fft_.k()[j];
    lu_[j] = cplx{0.0, params.alpha * k - k * k + params.gamma};
    lv_[j] = cplx{0.0, params.alpha * k + k * k - params.gamma};
  }
}

void Stepper::prepare(double dt) {
  if (dt == prepared_dt_) return;
  prepared_dt_ = dt;
  const std::size_t n = grid_.n_points();
  eu_half_.resize(n);
  ev_half_.resize(n);
  eu_.resize(n);
  ev_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    eu_half_[j] = std::exp(lu_[j] * (dt / 2.0));
    ev_half_[j] = std::exp(lv_[j] * (dt / 2.0));
    eu_[j] = eu_half_[j] * eu_half_[j];
    ev_[j] = ev_half_[j] * ev_half_[j];
  }
  if (cfg_.scheme != Scheme::etdrk4) return;
  // phi-function coefficients by contour averaging around each h·L
  constexpr int m = 32;
  auto coeffs = [&](const std::vector<cplx>& l, std::vector<cplx>& q, std::vector<cplx>& f1, std::vector<cplx>& f2,
                    std::vector<cplx>& f3) {
    q.assign(n, 0.0);
    f1.assign(n, 0.0);
    f2.assign(n, 0.0);
    f3.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx hl = dt * l[j];
      cplx sq = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      for (int r = 0; r < m; ++r) {
        const cplx root = std::exp(cplx{0.0, 2.0 * pi * (r + 0.5) / m});
        const cplx z = hl + root;
        const cplx ez = std::exp(z);
        const cplx z3 = z * z * z;
        sq += (std::exp(z / 2.0) - 1.0) / z;
        s1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
        s2 += (2.0 + z + ez * (-2.0 + z)) / z3;
        s3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
      }
      q[j] = dt * sq / static_cast<double>(m);
      f1[j] = dt * s1 / static_cast<double>(m);
      f2[j] = dt * s2 / static_cast<double>(m);
      f3[j] = dt * s3 / static_cast<double>(m);
    }
  };
  coeffs(lu_, qu_, f1u_, f2u_, f3u_);
  coeffs(lv_, qv_, f1v_, f2v_, f3v_);
}

void Stepper::nonlinear(const CVec& u_hat, const CVec& v_hat, CVec& nu_hat, CVec& nv_hat) {
  fft_.backward(u_hat, u_);
  fft_.backward(v_hat, v_);
  const std::size_t n = u_.size();
  w_.resize(n);
  for (std::size_t j = 0; j < n; ++j) w_[j] = u_[j] * v_[j];
  fft_.forward(w_, w_hat_);
  const auto& k = fft_.k();
  for (std::size_t j = 0; j < n; ++j) w_hat_[j] *= (j == n / 2) ? cplx{} : cplx{0.0, k[j]};
  fft_.backward(w_hat_, tmp_);
  const double b = params_.beta;
  const double b2 = b * b;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx w = w_[j];
    const cplx wx = tmp_[j];
    const cplx cu = -2.0 * I_unit * w + 4.0 * I_unit * b2 * w * w - 4.0 * b * wx;
    const cplx cv = 2.0 * I_unit * w - 4.0 * I_unit * b2 * w * w - 4.0 * b * wx;
    u_[j] *= cu;
    v_[j] *= cv;
  }
  fft_.forward(u_, nu_hat);
  fft_.forward(v_, nv_hat);
  if (cfg_.dealias) {
    fft_.dealias(nu_hat);
    fft_.dealias(nv_hat);
  }
}

void Stepper::step_if_rk4(CVec& u_hat, CVec& v_hat) {
  const double h = prepared_dt_;
  const std::size_t n = u_hat.size();
  CVec au, av, bu, bv, cu, cv, du, dv, su(n), sv(n);
  nonlinear(u_hat, v_hat, au, av);
  for (std::size_t j = 0; j < n; ++j) {
    su[j] = eu_half_[j] * (u_hat[j] + 0.5 * h * au[j]);
    sv[j] = ev_half_[j] * (v_hat[j] + 0.5 * h * av[j]);
  }
  nonlinear(su, sv, bu, bv);
  for (std::size_t j = 0; j < n; ++j) {
    su[j] = eu_half_[j] * u_hat[j] + 0.5 * h * bu[j];
    sv[j] = ev_half_[j] * v_hat[j] + 0.5 * h * bv[j];
  }
  nonlinear(su, sv, cu, cv);
  for (std::size_t j = 0; j < n; ++j) {
    su[j] = eu_[j] * u_hat[j] + h * eu_half_[j] * cu[j];
    sv[j] = ev_[j] * v_hat[j] + h * ev_half_[j] * cv[j];
  }
  nonlinear(su, sv, du, dv);
  for (std::size_t j = 0; j < n; ++j) {
    u_hat[j] = eu_[j] * u_hat[j] + h / 6.0 * (eu_[j] * au[j] + 2.0 * eu_half_[j] * (bu[j] + cu[j]) + du[j]);
    v_hat[j] = ev_[j] * v_hat[j] + h / 6.0 * (ev_[j] * av[j] + 2.0 * ev_half_[j] * (bv[j] + cv[j]) + dv[j]);
  }
}

void Stepper::step_etdrk4(CVec& u_hat, CVec& v_hat) {
  const std::size_t n = u_hat.size();
  CVec nu, nv, nau, nav, nbu, nbv, ncu, ncv, au(n), av(n), su(n), sv(n);
  nonlinear(u_hat, v_hat, nu, nv);
  for (std::size_t j = 0; j < n; ++j) {
    au[j] = eu_half_[j] * u_hat[j] + qu_[j] * nu[j];
    av[j] = ev_half_[j] * v_hat[j] + qv_[j] * nv[j];
  }
  nonlinear(au, av, nau, nav);
  for (std::size_t j = 0; j < n; ++j) {
    su[j] = eu_half_[j] * u_hat[j] + qu_[j] * nau[j];
    sv[j] = ev_half_[j] * v_hat[j] + qv_[j] * nav[j];
  }
  nonlinear(su, sv, nbu, nbv);
  for (std::size_t j = 0; j < n; ++j) {
    su[j] = eu_half_[j] * au[j] + qu_[j] * (2.0 * nbu[j] - nu[j]);
    sv[j] = ev_half_[j] * av[j] + qv_[j] * (2.0 * nbv[j] - nv[j]);
  }
  nonlinear(su, sv, ncu, ncv);
  for (std::size_t j = 0; j < n; ++j) {
    u_hat[j] = eu_[j] * u_hat[j] + nu[j] * f1u_[j] + 2.0 * (nau[j] + nbu[j]) * f2u_[j] + ncu[j] * f3u_[j];
    v_hat[j] = ev_[j] * v_hat[j] + nv[j] * f1v_[j] + 2.0 * (nav[j] + nbv[j]) * f2v_[j] + ncv[j] * f3v_[j];
  }
}

void Stepper::step(FieldState& state) { advance(state, cfg_.dt); }

void Stepper::advance(FieldState& state, double dt) {
  state.check_shape();
  if (!(state.grid == grid_)) throw DomainError("state grid differs from stepper grid");
  prepare(dt);
  CVec u_hat, v_hat;
  fft_.forward(state.u, u_hat);
  fft_.forward(state.v, v_hat);
  if (cfg_.scheme == Scheme::if_rk4) {
    step_if_rk4(u_hat, v_hat);
  } else {
    step_etdrk4(u_hat, v_hat);
  }
  CVec u_new, v_new;
  fft_.backward(u_hat, u_new);
  fft_.backward(v_hat, v_new);
  if (!all_finite(u_new) || !all_finite(v_new) || max_abs(u_new) > blow_up_level ||
      max_abs(v_new) > blow_up_level) {
    throw BlowUpError("solution exceeded the blow-up threshold after t = " + std::to_string(state.t), state.t);
  }
  state.u = std::move(u_new);
  state.v = std::move(v_new);
  state.t += dt;
}

void Stepper::run(FieldState& state, double t_end, const std::function<void(const FieldState&)>& observer) {
  if (cfg_.dt > stability_limit(state) * (1.0 + 1e-12)) {
    throw DomainError("dt exceeds the stability bound " + std::to_string(stability_limit(state)));
  }
  const double t0 = state.t;
  if (!(t_end >= t0)) throw DomainError("t_end lies before the current time");
  const auto steps = static_cast<long>(std::floor((t_end - t0) / cfg_.dt + 1e-9));
  for (long s = 1; s <= steps; ++s) {
    step(state);
    state.t = t0 + static_cast<double>(s) * cfg_.dt;
    if (observer && (s % cfg_.monitor_stride == 0 || (s == steps && state.t >= t_end))) observer(state);
  }
  const double rest = t_end - state.t;
  if (rest > 1e-12 * cfg_.dt) {
    advance(state, rest);
    state.t = t_end;
    if (observer) observer(state);
  }
}

FieldState step(const FieldState& state, const SolverConfig& cfg) {
  if (cfg.dt > stability_limit(state) * (1.0 + 1e-12)) {
    throw DomainError("dt exceeds the stability bound " + std::to_string(stability_limit(state)));
  }
  Stepper stepper(state.grid, state.params, cfg);
  FieldState next = state;
  stepper.step(next);
  return next;
}

double zero_curvature_residual(const FieldState& s0, const FieldState& s1, cplx z, LaxA1 variant) {
  s0.check_shape();
  s1.check_shape();
  if (!(s0.grid == s1.grid)) throw DomainError("states live on different grids");
  const double dt = s1.t - s0.t;
  if (!(dt > 0.0)) throw DomainError("state_next must be later than state");
  const auto& p = s0.params;
  const std::size_t n = s0.u.size();
  CVec u(n), v(n), w(n);
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = 0.5 * (s0.u[j] + s1.u[j]);
    v[j] = 0.5 * (s0.v[j] + s1.v[j]);
    w[j] = u[j] * v[j];
  }
  Fourier fft(s0.grid);
  const CVec ux = fft.derivative(u);
  const CVec vx = fft.derivative(v);
  const double ab = variant == LaxA1::derived ? 1.0 + p.alpha * p.beta : 1.0 - p.alpha * p.beta;
  CVec v11(n), v12(n), v21(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx a1 = p.beta * (ux[j] * v[j] - u[j] * vx[j]) + 4.0 * I_unit * p.beta * p.beta * w[j] * w[j] -
                    I_unit * ab * w[j];
    v11[j] = -I_unit * (2.0 * z * z + p.alpha * z - p.gamma / 2.0) + a1;
    const cplx coef = 2.0 * z - 2.0 * p.beta * w[j] + p.alpha;
    v12[j] = coef * u[j] + I_unit * ux[j];
    v21[j] = coef * v[j] - I_unit * vx[j];
  }
  const CVec v11x = fft.derivative(v11);
  const CVec v12x = fft.derivative(v12);
  const CVec v21x = fft.derivative(v21);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx w0 = s0.u[j] * s0.v[j];
    const cplx w1 = s1.u[j] * s1.v[j];
    Mat2 ut;
    ut << -I_unit * p.beta * (w1 - w0) / dt, (s1.u[j] - s0.u[j]) / dt, (s1.v[j] - s0.v[j]) / dt,
        I_unit * p.beta * (w1 - w0) / dt;
    Mat2 uu;
    const cplx d = -I_unit * z - I_unit * p.beta * w[j];
    uu << d, u[j], v[j], -d;
    Mat2 vv;
    vv << v11[j], v12[j], v21[j], -v11[j];
    Mat2 vx_m;
    vx_m << v11x[j], v12x[j], v21x[j], -v11x[j];
    const Mat2 res = ut - vx_m + (uu * vv - vv * uu);
    worst = std::max(worst, res.norm());
  }
  return worst;
}

std::vector<ConservationReport> conservation_residual(const std::vector<FieldState>& history) {
  if (history.size() < 3) throw ArityError("conservation_residual needs at least 3 snapshots");
  const double h = history[1].t - history[0].t;
  if (!(h > 0.0)) throw DomainError("snapshots must be increasing in time");
  for (std::size_t i = 1; i < history.size(); ++i) {
    history[i].check_shape();
    if (std::abs((history[i].t - history[i - 1].t) - h) > 1e-9 * std::max(1.0, std::abs(h)) + 1e-12) {
      throw DomainError("snapshots must be uniformly spaced in time");
    }
    if (!(history[i].grid == history[0].grid)) throw DomainError("snapshots live on different grids");
  }
  const auto& p = history[0].params;
  const double b = p.beta;
  Fourier fft(history[0].grid);
  std::vector<ConservationReport> out;
  for (std::size_t i = 1; i + 1 < history.size(); ++i) {
    const auto& s = history[i];
    const std::size_t n = s.u.size();
    const CVec ux = fft.derivative(s.u);
    const CVec vx = fft.derivative(s.v);
    CVec flux(n);
    cplx mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx w = s.u[j] * s.v[j];
      flux[j] = b * (ux[j] * s.v[j] - s.u[j] * vx[j]) + 4.0 * I_unit * b * b * w * w - I_unit * p.alpha * b * w;
      mass += w;
    }
    const CVec flux_x = fft.derivative(flux);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx wp = history[i + 1].u[j] * history[i + 1].v[j];
      const cplx wm = history[i - 1].u[j] * history[i - 1].v[j];
      const cplx lhs = -I_unit * b * (wp - wm) / (2.0 * h);
      worst = std::max(worst, std::abs(lhs - flux_x[j]));
    }
    out.push_back({s.t, worst, std::abs(mass) * s.grid.dx()});
  }
  return out;
}

}  // namespace cgnls
