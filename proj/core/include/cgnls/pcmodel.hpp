#pragma once

#include "cgnls/types.hpp"

namespace cgnls {

struct PCParams {
  cplx r0 = 0.0;
  double nu = 0.0;
  cplx beta12 = 0.0;
  cplx beta21 = 0.0;
  bool trivial = true;
};

// which side of a ray Σ_j (arg λ = (2j−1)π/4) to evaluate on; rays are
// oriented as in the model problem (Σ1, Σ4 outward, Σ2, Σ3 inward) and
// `plus` is the left side of the orientation
enum class RaySide { none, plus, minus };

PCParams pc_coefficients(cplx r0);

// 0 when λ lies on no ray, otherwise the ray index 1..4
int pc_ray(cplx lambda, double tol = 1e-14);

Mat2 Mpc(cplx lambda, const PCParams& params, RaySide side = RaySide::none);
Mat2 Mpc(cplx lambda, cplx r0, RaySide side = RaySide::none);

// displayed jump λ^{iνσ̂3} e^{−iλ²σ̂3/4} X_j on ray j
Mat2 pc_jump(cplx lambda, int ray, const PCParams& params);

// M1 in M = I + M1/(iλ) + ...
Mat2 pc_moment(const PCParams& params);

}  // namespace cgnls
