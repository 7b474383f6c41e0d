#include "cgnls/pcmodel.hpp"

#include <array>
#include <cmath>

#include "cgnls/errors.hpp"
#include "cgnls/special.hpp"

namespace cgnls {

namespace {

// sector index 1..6 of the model problem; rays resolved by the side flag
int sector(cplx lambda, RaySide side) {
  const double a = std::arg(lambda);
  const int ray = pc_ray(lambda);
  if (ray != 0) {
    if (side == RaySide::none) throw DomainError("Mpc: λ on a jump ray requires a side flag");
    const bool plus = side == RaySide::plus;
    switch (ray) {
      case 1: return plus ? 2 : 1;
      case 2: return plus ? 2 : 3;
      case 3: return plus ? 4 : 5;
      default: return plus ? 6 : 5;
    }
  }
  if (a > 0.0 && a < pi / 4.0) return 1;
  if (a > pi / 4.0 && a < 3.0 * pi / 4.0) return 2;
  if (a > 3.0 * pi / 4.0) return 3;
  if (a < -3.0 * pi / 4.0) return 4;
  if (a > -3.0 * pi / 4.0 && a < -pi / 4.0) return 5;
  if (a < 0.0) return 6;
  // positive real axis: Φ and P are continuous there
  return 1;
}

Mat2 sector_matrix(int s, const PCParams& p) {
  Mat2 m = Mat2::Identity();
  const double w = 1.0 + std::norm(p.r0);
  switch (s) {
    case 1: m(1, 0) = -p.r0; break;
    case 3: m(0, 1) = -std::conj(p.r0) / w; break;
    case 4: m(1, 0) = p.r0 / w; break;
    case 6: m(0, 1) = std::conj(p.r0); break;
    default: break;
  }
  return m;
}

}  // namespace

PCParams pc_coefficients(cplx r0) {
  PCParams p;
  p.r0 = r0;
  if (r0 == 0.0) return p;
  p.trivial = false;
  p.nu = -std::log1p(std::norm(r0)) / (2.0 * pi);
  const cplx inu{0.0, p.nu};
  p.beta12 = std::sqrt(2.0 * pi) * std::exp(cplx{0.0, pi / 4.0}) * std::exp(-pi * p.nu / 2.0) /
             (r0 * complex_gamma(-inu));
  p.beta21 = p.nu / p.beta12;
  return p;
}

int pc_ray(cplx lambda, double tol) {
  if (lambda == 0.0) return 0;
  const double a = std::arg(lambda);
  constexpr std::array<double, 4> angles = {pi / 4.0, 3.0 * pi / 4.0, -3.0 * pi / 4.0, -pi / 4.0};
  for (int j = 0; j < 4; ++j) {
    if (std::abs(a - angles[static_cast<std::size_t>(j)]) <= tol) return j + 1;
  }
  return 0;
}

Mat2 Mpc(cplx lambda, const PCParams& p, RaySide side) {
  if (p.trivial) return Mat2::Identity();
  if (lambda == 0.0) throw DomainError("Mpc: λ = 0 is a branch point");
  const int s = sector(lambda, side);
  const bool upper = s <= 3;
  const double nu = p.nu;
  const cplx inu{0.0, nu};
  const cplx e1 = std::exp(cplx{0.0, pi / 4.0});
  const cplx e3 = std::exp(cplx{0.0, 3.0 * pi / 4.0});
  // log Φ_jk and the matching scalar prefactors
  std::array<cplx, 4> lphi;
  std::array<cplx, 4> pref;
  if (upper) {
    lphi = {pcf_log(inu, std::exp(cplx{0.0, -3.0 * pi / 4.0}) * lambda),
            pcf_log(-inu - 1.0, std::exp(cplx{0.0, -pi / 4.0}) * lambda),
            pcf_log(inu - 1.0, std::exp(cplx{0.0, -3.0 * pi / 4.0}) * lambda),
            pcf_log(-inu, std::exp(cplx{0.0, -pi / 4.0}) * lambda)};
    pref = {std::exp(-3.0 * pi * nu / 4.0), -I_unit * p.beta12 * std::exp(cplx{pi * nu / 4.0, -pi / 4.0}),
            I_unit * p.beta21 * std::exp(cplx{-3.0 * pi * nu / 4.0, -3.0 * pi / 4.0}), std::exp(pi * nu / 4.0)};
  } else {
    lphi = {pcf_log(inu, e1 * lambda), pcf_log(-inu - 1.0, e3 * lambda), pcf_log(inu - 1.0, e1 * lambda),
            pcf_log(-inu, e3 * lambda)};
    pref = {std::exp(pi * nu / 4.0), -I_unit * p.beta12 * std::exp(cplx{-3.0 * pi * nu / 4.0, 3.0 * pi / 4.0}),
            I_unit * p.beta21 * std::exp(cplx{pi * nu / 4.0, pi / 4.0}), std::exp(-3.0 * pi * nu / 4.0)};
  }
  const Mat2 pm = sector_matrix(s, p);
  // log of the diagonal factor e^{iλ²/4} λ^{−iν} and its inverse
  const cplx le = I_unit * lambda * lambda / 4.0 - inu * std::log(lambda);
  const std::array<cplx, 2> ldiag = {le, -le};
  Mat2 m;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      // (Φ P E)_jk = Σ_l Φ_jl P_lk E_kk
      cplx acc = 0.0;
      for (int l = 0; l < 2; ++l) {
        const cplx plk = pm(l, k);
        if (plk == 0.0) continue;
        const std::size_t idx = static_cast<std::size_t>(2 * j + l);
        acc += pref[idx] * plk * std::exp(lphi[idx] + ldiag[static_cast<std::size_t>(k)]);
      }
      m(j, k) = acc;
    }
  }
  return m;
}

Mat2 Mpc(cplx lambda, cplx r0, RaySide side) { return Mpc(lambda, pc_coefficients(r0), side); }

Mat2 pc_jump(cplx lambda, int ray, const PCParams& p) {
  Mat2 x = Mat2::Identity();
  const double w = 1.0 + std::norm(p.r0);
  switch (ray) {
    case 1: x(1, 0) = p.r0; break;
    case 2: x(0, 1) = std::conj(p.r0) / w; break;
    case 3: x(1, 0) = p.r0 / w; break;
    case 4: x(0, 1) = std::conj(p.r0); break;
    default: throw DomainError("pc_jump: ray index must be 1..4");
  }
  const cplx la = I_unit * p.nu * std::log(lambda) - I_unit * lambda * lambda / 4.0;
  x(0, 1) *= std::exp(2.0 * la);
  x(1, 0) *= std::exp(-2.0 * la);
  return x;
}

Mat2 pc_moment(const PCParams& p) {
  Mat2 m = Mat2::Zero();
  m(0, 1) = p.beta12;
  m(1, 0) = -p.beta21;
  return m;
}

}  // namespace cgnls
