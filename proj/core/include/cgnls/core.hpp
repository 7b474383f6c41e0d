#pragma once

#include <vector>

#include "cgnls/types.hpp"

namespace cgnls {

struct PhaseContext {
  double x = 0.0;
  double t = 1.0;
  double z0 = 0.0;
  EquationParams params;

  static PhaseContext make(double x, double t, const EquationParams& params);
};

// Constant in the discrete-spectrum phase: 2z² + αz + (x/t)z − κ with
// κ = γ/2 (matching θ on the continuous spectrum) or κ = γ.
enum class ThetaConstant { half_gamma, full_gamma };

double theta_shift(ThetaConstant variant, double gamma);

struct Partition {
  std::vector<std::size_t> minus;
  std::vector<std::size_t> plus;
};

double phase_point(double x, double t, const EquationParams& params);

cplx theta(cplx z, const PhaseContext& ctx);

// 2itθ(z) written without the 1/t so that t = 0 is admissible;
// gamma_shift is the constant subtracted from 2z² + αz
cplx phase_exponent(cplx z, double x, double t, double alpha, double gamma_shift);

Partition partition_spectrum(const SolitonData& data, double z0);

Interval cone_interval(const ConeSpec& cone);

// indices k with Re z_k inside the closed interval
std::vector<std::size_t> select_in_interval(const SolitonData& data, const Interval& interval);

bool in_cone(const ConeSpec& cone, double x, double t);

}  // namespace cgnls
