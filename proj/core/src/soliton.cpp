#include "cgnls/soliton.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "cgnls/errors.hpp"
#include "cgnls/fourier.hpp"

namespace cgnls {

namespace {

constexpr double edge_limit = 1e-12;

}  // namespace

cplx ReflectionlessSolution::u() const { return u_sol * std::exp(cplx{0.0, 2.0 * gauge_phase}); }

cplx ReflectionlessSolution::v() const { return v_sol * std::exp(cplx{0.0, -2.0 * gauge_phase}); }

Mat2 ReflectionlessSolution::M(cplx z) const {
  Mat2 m = Mat2::Identity();
  for (std::size_t k = 0; k < poles.size(); ++k) {
    const cplx a = 1.0 / (z - poles[k]);
    const cplx b = 1.0 / (z - std::conj(poles[k]));
    m(0, 0) += a * zeta[k];
    m(1, 0) += a * eta[k];
    m(0, 1) -= b * std::conj(eta[k]);
    m(1, 1) += b * std::conj(zeta[k]);
  }
  return m;
}

ReflectionlessSolution nsoliton(const SolitonData& data, double x, double t, const EquationParams& params,
                                const SolitonOptions& options) {
  data.validate();
  ReflectionlessSolution sol;
  sol.x = x;
  sol.t = t;
  const std::size_t n = data.size();
  if (n == 0) return sol;
  const double shift = theta_shift(options.theta_constant, params.gamma);
  std::vector<cplx> z(n), lg(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = data.entries[k].z;
    lg[k] = std::log(data.entries[k].c) + phase_exponent(z[k], x, t, params.alpha, shift);
  }
  // unknowns (η_1..η_N, w_1..w_N) with w_k = conj(ζ_k):
  //   η_k − γ_k Σ_j w_j/(z_k − z_j*) = γ_k
  //   w_k + γ_k* Σ_j η_j/(z_k* − z_j) = 0
  // rows with |γ_k| > 1 are divided by γ_k (resp. γ_k*)
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto ik = static_cast<Eigen::Index>(k);
    const auto nk = static_cast<Eigen::Index>(n + k);
    const bool big = lg[k].real() > 0.0;
    const cplx g = big ? 1.0 : std::exp(lg[k]);
    const cplx diag = big ? std::exp(-lg[k]) : 1.0;
    a(ik, ik) = diag;
    a(nk, nk) = std::conj(diag);
    rhs(ik) = g;
    for (std::size_t j = 0; j < n; ++j) {
      const auto ij = static_cast<Eigen::Index>(j);
      const auto nj = static_cast<Eigen::Index>(n + j);
      a(ik, nj) = -g / (z[k] - std::conj(z[j]));
      a(nk, ij) = std::conj(g) / (std::conj(z[k]) - z[j]);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-14 * smax)) throw DegenerateData("reflectionless system is singular");
  sol.condition = smax / smin;
  const Eigen::VectorXcd xs = a.fullPivLu().solve(rhs);
  sol.poles = z;
  sol.zeta.resize(n);
  sol.eta.resize(n);
  cplx sum_eta = 0.0;
  cplx sum_zeta = 0.0;
  double sum_im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sol.eta[k] = xs(static_cast<Eigen::Index>(k));
    sol.zeta[k] = std::conj(xs(static_cast<Eigen::Index>(n + k)));
    sum_eta += sol.eta[k];
    sum_zeta += sol.zeta[k];
    sum_im += z[k].imag();
  }
  sol.u_sol = -2.0 * I_unit * std::conj(sum_eta);
  sol.v_sol = -2.0 * I_unit * sum_eta;
  sol.gauge_phase = (2.0 * I_unit * params.beta * (sum_zeta - 2.0 * I_unit * sum_im)).real();
  return sol;
}

OneSoliton one_soliton(cplx z1, cplx c1, double x, double t, const EquationParams& params,
                       const SolitonOptions& options) {
  const double xi = z1.real();
  const double h = z1.imag();
  if (!(h > 0.0)) throw DomainError("one_soliton requires Im z1 > 0");
  if (std::abs(c1) == 0.0) throw DomainError("one_soliton requires c1 != 0");
  const double kappa = theta_shift(options.theta_constant, params.gamma);
  OneSoliton s;
  s.omega = x + (4.0 * xi + params.alpha) * t - std::log(std::abs(c1) / (2.0 * h)) / (2.0 * h);
  const double amp = 2.0 * h / std::cosh(2.0 * h * s.omega);
  const double phi = std::arg(c1) + 2.0 * xi * x + 2.0 * t * (2.0 * (xi * xi - h * h) + params.alpha * xi - kappa);
  s.gauge_phase = 2.0 * params.beta * h * (1.0 + std::tanh(2.0 * h * s.omega));
  s.v_sol = amp * std::exp(cplx{0.0, phi - pi / 2.0});
  s.u_sol = amp * std::exp(cplx{0.0, -(phi + pi / 2.0)});
  s.u = s.u_sol * std::exp(cplx{0.0, 2.0 * s.gauge_phase});
  s.v = s.v_sol * std::exp(cplx{0.0, -2.0 * s.gauge_phase});
  return s;
}

double one_soliton_peak(cplx z1, cplx c1, double t, const EquationParams& params) {
  const double h = z1.imag();
  if (!(h > 0.0)) throw DomainError("one_soliton_peak requires Im z1 > 0");
  return -(4.0 * z1.real() + params.alpha) * t + std::log(std::abs(c1) / (2.0 * h)) / (2.0 * h);
}

double gauge_phase(const SolitonData& data, double x, double t, const EquationParams& params,
                   const SolitonOptions& options) {
  if (params.beta == 0.0) return 0.0;
  return nsoliton(data, x, t, params, options).gauge_phase;
}

std::vector<double> gauge_phase(const FieldState& state) {
  state.check_shape();
  const std::size_t n = state.u.size();
  std::vector<double> out(n, 0.0);
  if (state.params.beta == 0.0) return out;
  const double edge = std::max({std::abs(state.u.front()), std::abs(state.u.back()), std::abs(state.v.front()),
                               std::abs(state.v.back())});
  if (edge > 1e-6) throw TruncationError("gauge_phase: fields have not decayed at the grid edges");
  CVec w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = state.u[j] * state.v[j];
  Fourier fft(state.grid);
  const CVec integral = fft.antiderivative(w);
  for (std::size_t j = 0; j < n; ++j) out[j] = -state.params.beta * integral[j].real();
  return out;
}

SolitonData modified_constants(const SolitonData& data, double z0, const ContinuousSpectrum& spectrum) {
  SolitonData out = data;
  if (spectrum.trivial()) return out;
  for (auto& e : out.entries) e.c *= std::exp(-2.0 * log_delta(e.z, z0, spectrum));
  return out;
}

SolitonData cone_constants(const SolitonData& data, const Interval& interval, int time_sign) {
  SolitonData out;
  for (const auto& e : data.entries) {
    if (!interval.contains(e.z.real())) continue;
    cplx c = e.c;
    for (const auto& o : data.entries) {
      const double re = o.z.real();
      const bool crossing = time_sign >= 0 ? re < interval.lo : re > interval.hi;
      if (!crossing) continue;
      const cplx f = (e.z - o.z) / (e.z - std::conj(o.z));
      c *= f * f;
    }
    out.entries.push_back({e.z, c});
  }
  return out;
}

FieldState reflectionless_state(const SolitonData& data, const SpatialGrid& grid, double t,
                                const EquationParams& params, const SolitonOptions& options) {
  FieldState s = FieldState::zeros(grid, params, t);
  for (std::size_t j = 0; j < grid.n_points(); ++j) {
    const auto sol = nsoliton(data, grid.x(j), t, params, options);
    s.u[j] = sol.u();
    s.v[j] = sol.v();
  }
  return s;
}

FieldState make_initial_data(const SolitonData& data, const SpatialGrid& grid, const EquationParams& params,
                             const SolitonOptions& options) {
  FieldState s = reflectionless_state(data, grid, 0.0, params, options);
  const double edge = std::max({std::abs(s.u.front()), std::abs(s.u.back()), std::abs(s.v.front()),
                               std::abs(s.v.back())});
  if (edge > edge_limit) {
    throw TruncationError("make_initial_data: solitons are not contained in the grid (edge value " +
                          std::to_string(edge) + ")");
  }
  return s;
}

}  // namespace cgnls
