#pragma once

#include <vector>

#include "cgnls/core.hpp"
#include "cgnls/spectral.hpp"
#include "cgnls/types.hpp"

namespace cgnls {

struct SolitonOptions {
  ThetaConstant theta_constant = ThetaConstant::half_gamma;
};

struct ReflectionlessSolution {
  double x = 0.0;
  double t = 0.0;
  std::vector<cplx> poles;
  CVec zeta;
  CVec eta;
  // reconstruction before the gauge factor
  cplx u_sol = 0.0;
  cplx v_sol = 0.0;
  // ∫Δ from −∞ to x at fixed t
  double gauge_phase = 0.0;
  double condition = 1.0;

  // fields including the gauge factor e^{±2i∫Δ}
  cplx u() const;
  cplx v() const;
  Mat2 M(cplx z) const;
};

ReflectionlessSolution nsoliton(const SolitonData& data, double x, double t, const EquationParams& params,
                                const SolitonOptions& options = {});

struct OneSoliton {
  cplx u = 0.0;
  cplx v = 0.0;
  cplx u_sol = 0.0;
  cplx v_sol = 0.0;
  double omega = 0.0;
  double gauge_phase = 0.0;
};

// closed form; Ω = x + (4ξ + α)t − log(|c1|/2η)/(2η) vanishes on the peak
OneSoliton one_soliton(cplx z1, cplx c1, double x, double t, const EquationParams& params,
                       const SolitonOptions& options = {});

double one_soliton_peak(cplx z1, cplx c1, double t, const EquationParams& params);

// closed-form gauge phase of the reflectionless solution
double gauge_phase(const SolitonData& data, double x, double t, const EquationParams& params,
                   const SolitonOptions& options = {});

// −β ∫_{x_min}^{x_j} u v dx on the grid of a sampled state
std::vector<double> gauge_phase(const FieldState& state);

// c̃_k = c_k δ(z_k)^{−2}
SolitonData modified_constants(const SolitonData& data, double z0, const ContinuousSpectrum& spectrum);

// Renormalized constants for the solitons with Re z_k in I. Poles to the
// left of I (t > 0) or to the right of I (t < 0) contribute the factor
// ((z_k − z_j)/(z_k − z_j*))²; the others drop out.
SolitonData cone_constants(const SolitonData& data, const Interval& interval, int time_sign = 1);

FieldState make_initial_data(const SolitonData& data, const SpatialGrid& grid, const EquationParams& params,
                             const SolitonOptions& options = {});

FieldState reflectionless_state(const SolitonData& data, const SpatialGrid& grid, double t,
                                const EquationParams& params, const SolitonOptions& options = {});

}  // namespace cgnls
