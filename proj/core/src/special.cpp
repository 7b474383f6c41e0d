#include "cgnls/special.hpp"

#include <array>
#include <cmath>

#include "cgnls/errors.hpp"

namespace cgnls {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double log_sqrt_2pi = 0.5 * std::log(2.0 * pi);

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

cplx lanczos_sum(cplx zm1) {
  cplx x = lanczos_c[0];
  for (std::size_t i = 1; i < lanczos_c.size(); ++i) x += lanczos_c[i] / (zm1 + static_cast<double>(i));
  return x;
}

constexpr double series_radius = 4.0;
constexpr double asymptotic_radius = 8.0;
constexpr double step_length = 0.25;

// Kummer M(a, b, x)
cplx kummer(cplx a, cplx b, cplx x) {
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int n = 0; n < 800; ++n) {
    term *= (a + static_cast<double>(n)) / (b + static_cast<double>(n)) * x / static_cast<double>(n + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && n > 4) break;
  }
  return sum;
}

cplx pcf_series(cplx a, cplx z) {
  const cplx x = z * z / 2.0;
  const cplx first = std::sqrt(pi) * reciprocal_gamma((1.0 - a) / 2.0) * kummer(-a / 2.0, 0.5, x);
  const cplx second = std::sqrt(2.0 * pi) * z * reciprocal_gamma(-a / 2.0) * kummer((1.0 - a) / 2.0, 1.5, x);
  return std::pow(2.0, a / 2.0) * std::exp(-z * z / 4.0) * (first - second);
}

// Σ_k (∓1)^k (p)_{2k} / (k! (2z²)^k), stopped at the smallest term
cplx asymptotic_sum(cplx p, cplx z, bool alternating) {
  const cplx z2 = 2.0 * z * z;
  cplx term = 1.0;
  cplx sum = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double kk = static_cast<double>(k);
    cplx next = term * (p + 2.0 * kk - 2.0) * (p + 2.0 * kk - 1.0) / (kk * z2);
    if (alternating) next = -next;
    const double mag = std::abs(next);
    if (mag > last) break;
    term = next;
    sum += term;
    last = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// log of each of the (at most two) asymptotic contributions
struct AsymptoticLogs {
  cplx recessive;
  cplx dominant;
  bool has_dominant = false;
};

AsymptoticLogs pcf_asymptotic_logs(cplx a, cplx z) {
  AsymptoticLogs out;
  const cplx lz = std::log(z);
  out.recessive = -z * z / 4.0 + a * lz + std::log(asymptotic_sum(-a, z, true));
  if (std::abs(std::arg(z)) > pi / 2.0) {
    const cplx rg = reciprocal_gamma(-a);
    if (rg != 0.0) {
      const double sg = z.imag() >= 0.0 ? 1.0 : -1.0;
      out.dominant = log_sqrt_2pi + std::log(rg) + I_unit * (sg * pi * a + pi) + z * z / 4.0 -
                     (a + 1.0) * lz + std::log(asymptotic_sum(a + 1.0, z, false));
      out.has_dominant = true;
    }
  }
  return out;
}

cplx log_add(cplx la, cplx lb) {
  if (la.real() < lb.real()) std::swap(la, lb);
  return la + std::log(1.0 + std::exp(lb - la));
}

cplx pcf_asymptotic_log(cplx a, cplx z) {
  const auto logs = pcf_asymptotic_logs(a, z);
  return logs.has_dominant ? log_add(logs.recessive, logs.dominant) : logs.recessive;
}

cplx pcf_asymptotic(cplx a, cplx z) { return std::exp(pcf_asymptotic_log(a, z)); }

// Taylor stepping of y'' = (z²/4 − a − 1/2) y from (z_from, y, y') to z_to
// along the straight segment
std::pair<cplx, cplx> step_ode(cplx a, cplx z_from, cplx y, cplx dy, cplx z_to) {
  const double length = std::abs(z_to - z_from);
  const int steps = std::max(1, static_cast<int>(std::ceil(length / step_length)));
  const cplx h = (z_to - z_from) / static_cast<double>(steps);
  cplx zc = z_from;
  for (int s = 0; s < steps; ++s) {
    const cplx q0 = zc * zc / 4.0 - a - 0.5;
    const cplx q1 = zc / 2.0;
    const cplx q2 = 0.25;
    // coefficients of y(zc + τh) in powers of τ (scaled by h^n)
    cplx cm2 = 0.0, cm1 = 0.0, c0 = y, c1 = dy * h;
    cplx val = c0 + c1;
    cplx der = dy;
    const cplx h2 = h * h;
    for (int n = 0; n < 80; ++n) {
      // (n+2)(n+1) c_{n+2} = h²(q0 c_n + q1 h c_{n−1} + q2 h² c_{n−2})
      const cplx c2 = h2 * (q0 * c0 + q1 * h * cm1 + q2 * h2 * cm2) / static_cast<double>((n + 2) * (n + 1));
      val += c2;
      der += static_cast<double>(n + 2) * c2 / h;
      cm2 = cm1;
      cm1 = c0;
      c0 = c1;
      c1 = c2;
      if (n > 6 && std::abs(c2) < 1e-18 * std::abs(val) && std::abs(c0) < 1e-18 * std::abs(val)) break;
    }
    y = val;
    dy = der;
    zc += h;
  }
  return {y, dy};
}

}  // namespace

cplx complex_gamma(cplx z) {
  if (is_pole(z)) throw PoleError("complex_gamma: pole at a non-positive integer");
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
  const cplx zm1 = z - 1.0;
  const cplx t = zm1 + lanczos_g + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * lanczos_sum(zm1);
}

cplx log_gamma(cplx z) {
  if (is_pole(z)) throw PoleError("log_gamma: pole at a non-positive integer");
  if (z.real() < 0.5) return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  const cplx zm1 = z - 1.0;
  const cplx t = zm1 + lanczos_g + 0.5;
  return log_sqrt_2pi + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

cplx reciprocal_gamma(cplx z) {
  if (is_pole(z)) return 0.0;
  return 1.0 / complex_gamma(z);
}

std::pair<cplx, cplx> pcf_with_derivative(cplx a, cplx z) {
  const double r = std::abs(z);
  if (!(r < pcf_max_abs_z)) throw DomainError("pcf: |z| outside the supported range");
  auto value = [](cplx aa, cplx zz, bool series) { return series ? pcf_series(aa, zz) : pcf_asymptotic(aa, zz); };
  if (r <= series_radius || r >= asymptotic_radius) {
    const bool series = r <= series_radius;
    const cplx d = value(a, z, series);
    const cplx dm1 = value(a - 1.0, z, series);
    return {d, a * dm1 - z / 2.0 * d};
  }
  const cplx dir = z / r;
  const bool inward = std::abs(std::arg(z)) < pi / 4.0;
  const cplx start = inward ? dir * asymptotic_radius : dir * series_radius;
  const cplx d = value(a, start, !inward);
  const cplx dm1 = value(a - 1.0, start, !inward);
  return step_ode(a, start, d, a * dm1 - start / 2.0 * d, z);
}

cplx pcf(cplx a, cplx z) { return pcf_with_derivative(a, z).first; }

cplx pcf_log(cplx a, cplx z) {
  const double r = std::abs(z);
  if (!(r < pcf_max_abs_z)) throw DomainError("pcf_log: |z| outside the supported range");
  if (r >= asymptotic_radius) return pcf_asymptotic_log(a, z);
  return std::log(pcf(a, z));
}

}  // namespace cgnls
