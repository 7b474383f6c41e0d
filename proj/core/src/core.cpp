#include "cgnls/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgnls/errors.hpp"

namespace cgnls {

bool EquationParams::finite() const {
  return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma);
}

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw DomainError("grid requires finite x_min < x_max");
  }
  if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
    throw DomainError("grid n_points must be a power of two >= 8, got " + std::to_string(n_points));
  }
  dx_ = (x_max - x_min) / static_cast<double>(n_points);
}

std::vector<double> SpatialGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

FieldState FieldState::zeros(const SpatialGrid& grid, const EquationParams& params, double t) {
  FieldState s;
  s.grid = grid;
  s.t = t;
  s.u.assign(grid.n_points(), cplx{});
  s.v.assign(grid.n_points(), cplx{});
  s.params = params;
  return s;
}

void FieldState::check_shape() const {
  if (u.size() != grid.n_points() || v.size() != grid.n_points()) {
    throw DomainError("field arrays do not match grid size");
  }
}

double FieldState::reduction_defect() const {
  double m = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(v[j] + std::conj(u[j])));
  return m;
}

void SolitonData::validate() const {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (!std::isfinite(e.z.real()) || !std::isfinite(e.z.imag()) || !std::isfinite(e.c.real()) ||
        !std::isfinite(e.c.imag())) {
      throw DomainError("soliton data must be finite");
    }
    if (!(e.z.imag() > 0.0)) throw DomainError("soliton eigenvalue must lie in the upper half-plane");
    if (std::abs(e.c) == 0.0) throw DomainError("norming constant must be nonzero");
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(entries[j].z - e.z) < 1e-12) throw DegenerateData("repeated soliton eigenvalue");
    }
  }
}

void ScatteringData::validate() const {
  if (z_grid.size() != r.size()) throw DomainError("z_grid and r differ in length");
  for (std::size_t j = 1; j < z_grid.size(); ++j) {
    if (!(z_grid[j] > z_grid[j - 1])) throw DomainError("z_grid must be strictly increasing");
  }
  SolitonData{discrete}.validate();
}

double Interval::distance(double s) const {
  if (s < lo) return lo - s;
  if (s > hi) return s - hi;
  return 0.0;
}

PhaseContext PhaseContext::make(double x, double t, const EquationParams& params) {
  return PhaseContext{x, t, phase_point(x, t, params), params};
}

double phase_point(double x, double t, const EquationParams& params) {
  if (!(t > 0.0)) throw DomainError("phase_point requires t > 0");
  return -(x / t + params.alpha) / 4.0;
}

cplx theta(cplx z, const PhaseContext& ctx) {
  return 2.0 * z * z - 4.0 * ctx.z0 * z - ctx.params.gamma / 2.0;
}

double theta_shift(ThetaConstant variant, double gamma) {
  return variant == ThetaConstant::half_gamma ? gamma / 2.0 : gamma;
}

cplx phase_exponent(cplx z, double x, double t, double alpha, double gamma_shift) {
  return 2.0 * I_unit * (x * z + t * (2.0 * z * z + alpha * z - gamma_shift));
}

Partition partition_spectrum(const SolitonData& data, double z0) {
  Partition p;
  for (std::size_t k = 0; k < data.entries.size(); ++k) {
    const double re = data.entries[k].z.real();
    if (re == z0) {
      throw DegeneratePartition("eigenvalue real part coincides with the phase point");
    }
    (re < z0 ? p.minus : p.plus).push_back(k);
  }
  return p;
}

Interval cone_interval(const ConeSpec& cone) {
  if (!(cone.v1 < cone.v2)) throw DomainError("cone requires v1 < v2");
  if (!(cone.x1 < cone.x2)) throw DomainError("cone requires x1 < x2");
  return Interval{-cone.v2 / 2.0, -cone.v1 / 2.0};
}

std::vector<std::size_t> select_in_interval(const SolitonData& data, const Interval& interval) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < data.entries.size(); ++k) {
    if (interval.contains(data.entries[k].z.real())) idx.push_back(k);
  }
  return idx;
}

bool in_cone(const ConeSpec& cone, double x, double t) {
  if (t >= 0.0) return x >= cone.x1 + cone.v1 * t && x <= cone.x2 + cone.v2 * t;
  return x >= cone.x1 + cone.v2 * t && x <= cone.x2 + cone.v1 * t;
}

}  // namespace cgnls
