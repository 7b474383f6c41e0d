#pragma once

#include <utility>

#include "cgnls/types.hpp"

namespace cgnls {

// Lanczos approximation (g = 7, nine terms) with reflection for Re z < 1/2.
cplx complex_gamma(cplx z);
// a logarithm of Γ(z); exp(log_gamma(z)) == Γ(z), branch unspecified
cplx log_gamma(cplx z);
// 1/Γ(z), entire; exactly zero at the poles of Γ
cplx reciprocal_gamma(cplx z);

// Weber parabolic cylinder function D_a(z), solution of
// D'' + (a + 1/2 − z²/4) D = 0 recessive along the positive real axis.
// |z| ≤ 4: confluent hypergeometric series; |z| ≥ 8: asymptotic series;
// in between the ODE is stepped along the ray in its stable direction.
cplx pcf(cplx a, cplx z);
// (D_a(z), D_a'(z))
std::pair<cplx, cplx> pcf_with_derivative(cplx a, cplx z);
// a logarithm of D_a(z) usable where D_a over- or underflows
cplx pcf_log(cplx a, cplx z);

inline constexpr double pcf_max_abs_z = 400.0;

}  // namespace cgnls
