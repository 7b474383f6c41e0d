#include "cgnls/spectral.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <limits>

#include "cgnls/errors.hpp"

namespace cgnls {

namespace {

constexpr unsigned gk_depth = 10;
constexpr double gk_tol = 1e-11;

// Adaptive Gauss–Kronrod on every spline cell of the sample grid inside
// [a, b], so that each panel sees a smooth integrand. `split` adds one
// more breakpoint.
template <class F>
auto piecewise(const ContinuousSpectrum& sp, F f, double a, double b, double split = std::nan("")) {
  using boost::math::quadrature::gauss_kronrod;
  using R = decltype(f(a));
  R total{};
  if (!(b > a)) return total;
  std::vector<double> pts{a};
  const auto& knots = sp.z_grid();
  auto it = std::upper_bound(knots.begin(), knots.end(), a);
  for (; it != knots.end() && *it < b; ++it) pts.push_back(*it);
  if (split > a && split < b) pts.push_back(split);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  struct Panel {
    R value;
    double err;
    double l1;
  };
  auto rule = [&](double lo, double hi) {
    Panel p{};
    p.value = gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &p.err, &p.l1);
    return p;
  };
  // first pass fixes an absolute tolerance from the L1 norm of the whole
  // integral; a cell whose own integral nearly cancels is not refined
  // towards a relative target it cannot meet
  std::vector<Panel> first;
  double l1_total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    first.push_back(pts[i + 1] > pts[i] ? rule(pts[i], pts[i + 1]) : Panel{});
    l1_total += first.back().l1;
  }
  const double abs_tol = gk_tol * std::max(l1_total, std::numeric_limits<double>::min());
  const double width = b - a;
  double err_sum = 0.0;
  std::function<R(double, double, const Panel&, unsigned)> refine = [&](double lo, double hi, const Panel& p,
                                                                         unsigned depth) -> R {
    if (depth == 0 || p.err <= abs_tol * (hi - lo) / width) {
      err_sum += p.err;
      return p.value;
    }
    const double mid = 0.5 * (lo + hi);
    return refine(lo, mid, rule(lo, mid), depth - 1) + refine(mid, hi, rule(mid, hi), depth - 1);
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] > pts[i]) total += refine(pts[i], pts[i + 1], first[i], gk_depth);
  }
  if (!(err_sum <= 1e-9 * std::max(1.0, l1_total))) throw ToleranceError("quadrature did not reach tolerance");
  return total;
}

// ∫_a^b (ν(s) − ν(x))/(s − z) ds, split at x when inside
cplx subtracted_integral(const ContinuousSpectrum& sp, double a, double b, cplx z, double x) {
  const double nx = sp.nu(x);
  const double slope = sp.nu_prime(x);
  auto f = [&](double s) -> cplx {
    const cplx d = cplx{s, 0.0} - z;
    if (std::abs(d) < 1e-12) return slope;
    return (sp.nu(s) - nx) / d;
  };
  const auto& knots = sp.z_grid();
  auto it = std::upper_bound(knots.begin(), knots.end(), x);
  // a knot within rounding distance of x is absorbed into the window
  const double tiny = 1e-9 * (knots.back() - knots.front()) / static_cast<double>(knots.size());
  auto below = it == knots.begin() ? it : it - 1;
  if (below != knots.begin() && x - *below < tiny) --below;
  if (it != knots.end() && *it - x < tiny) ++it;
  const double lo = std::max(a, it == knots.begin() ? a : *below);
  const double hi = std::min(b, it == knots.end() ? b : *it);
  if (std::abs(z.imag()) > hi - lo) return piecewise(sp, f, a, b, x);
  // z close to the cut: the cell around x gets endpoint-clustered nodes
  boost::math::quadrature::tanh_sinh<double> ts;
  cplx near = 0.0;
  double err_sum = 0.0;
  double l1_sum = 0.0;
  for (auto [p, q] : {std::pair{lo, x}, std::pair{x, hi}}) {
    if (!(q > p)) continue;
    double err = 0.0;
    double l1 = 0.0;
    near += ts.integrate(f, p, q, 1e-12, &err, &l1);
    err_sum += err;
    l1_sum += l1;
  }
  if (!(err_sum <= 1e-9 * std::max(1.0, l1_sum))) throw ToleranceError("quadrature did not reach tolerance");
  return near + piecewise(sp, f, a, lo) + piecewise(sp, f, hi, b);
}

}  // namespace

ContinuousSpectrum::ContinuousSpectrum(const ScatteringData& data) : ContinuousSpectrum(data.z_grid, data.r) {}

ContinuousSpectrum::ContinuousSpectrum(std::vector<double> z_grid, const CVec& r) : z_grid_(std::move(z_grid)) {
  if (z_grid_.size() != r.size()) throw DomainError("reflection samples and grid differ in length");
  const bool zero = std::all_of(r.begin(), r.end(), [](const cplx& x) { return x == 0.0; });
  if (z_grid_.size() < 3 || zero) return;
  std::vector<double> re(r.size()), im(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    re[j] = r[j].real();
    im[j] = r[j].imag();
  }
  re_ = CubicSpline(z_grid_, re);
  im_ = CubicSpline(z_grid_, im);
  lower_ = z_grid_.front();
  upper_ = z_grid_.back();
  trivial_ = false;
}

cplx ContinuousSpectrum::r(double s) const {
  if (trivial_) return 0.0;
  return {re_(s), im_(s)};
}

cplx ContinuousSpectrum::r_prime(double s) const {
  if (trivial_) return 0.0;
  return {re_.derivative(s), im_.derivative(s)};
}

double ContinuousSpectrum::nu(double s) const {
  if (trivial_) return 0.0;
  return -std::log1p(std::norm(r(s))) / (2.0 * pi);
}

double ContinuousSpectrum::nu_prime(double s) const {
  if (trivial_) return 0.0;
  const cplx rv = r(s);
  return -(std::conj(rv) * r_prime(s)).real() / (pi * (1.0 + std::norm(rv)));
}

std::vector<double> ContinuousSpectrum::nu_samples() const {
  std::vector<double> out(z_grid_.size());
  for (std::size_t j = 0; j < z_grid_.size(); ++j) out[j] = nu(z_grid_[j]);
  return out;
}

double nu(double s, const ContinuousSpectrum& spectrum) { return spectrum.nu(s); }

cplx log_delta(cplx z, double z0, const ContinuousSpectrum& sp) {
  if (sp.trivial()) return 0.0;
  const double a = sp.lower();
  const double b = std::min(z0, sp.upper());
  if (!(b > a)) return 0.0;
  if (z.imag() == 0.0 && z.real() >= a && z.real() <= b) {
    throw DomainError("log_delta: z on the branch cut; use T_boundary");
  }
  const double x = std::clamp(z.real(), a, b);
  const cplx j = subtracted_integral(sp, a, b, z, x) + sp.nu(x) * (std::log(b - z) - std::log(a - z));
  return I_unit * j;
}

cplx delta(cplx z, double z0, const ContinuousSpectrum& sp) { return std::exp(log_delta(z, z0, sp)); }

cplx blaschke(cplx z, const SolitonData& data, double z0) {
  cplx b = 1.0;
  for (const auto& e : data.entries) {
    if (e.z.real() < z0) b *= (z - std::conj(e.z)) / (z - e.z);
  }
  return b;
}

cplx T(cplx z, const SolitonData& data, double z0, const ContinuousSpectrum& sp) {
  for (const auto& e : data.entries) {
    if (e.z.real() < z0 && std::abs(z - e.z) == 0.0) throw PoleError("T: evaluation at a pole");
  }
  return blaschke(z, data, z0) * delta(z, z0, sp);
}

cplx T_boundary(double z, BoundarySide side, const SolitonData& data, double z0, const ContinuousSpectrum& sp) {
  if (!(z < z0)) throw DomainError("T_boundary requires z < z0");
  if (z0 - z < 1e-10) throw DomainError("T_boundary: z too close to the endpoint z0");
  const cplx b = blaschke(z, data, z0);
  if (sp.trivial()) return b;
  const double lo = sp.lower();
  const double hi = std::min(z0, sp.upper());
  if (!(hi > lo)) return b;
  double pv = 0.0;
  double nz = 0.0;
  if (z > lo && z < hi) {
    nz = sp.nu(z);
    pv = subtracted_integral(sp, lo, hi, cplx{z, 0.0}, z).real() + nz * std::log((hi - z) / (z - lo));
  } else {
    auto f = [&](double s) { return sp.nu(s) / (s - z); };
    pv = piecewise(sp, f, lo, hi);
    nz = 0.0;
  }
  const double sign = side == BoundarySide::plus ? -1.0 : 1.0;
  return b * std::exp(cplx{sign * pi * nz, pv});
}

cplx beta_fn(cplx z, double z0, const ContinuousSpectrum& sp) {
  const double n0 = sp.nu(z0);
  if (z == cplx{z0, 0.0}) return T0_and_beta(z0, SolitonData{}, sp).beta_at_z0;
  const cplx j = -I_unit * log_delta(z, z0, sp);
  return -n0 * std::log(z - z0 + 1.0) + j - n0 * (std::log(z0 - z) - std::log(z0 - 1.0 - z));
}

T0Beta T0_and_beta(double z0, const SolitonData& data, const ContinuousSpectrum& sp) {
  T0Beta out;
  double beta = 0.0;
  if (!sp.trivial()) {
    const double n0 = sp.nu(z0);
    const double a = sp.lower();
    const double b = sp.upper();
    auto plain = [&](double s) { return sp.nu(s) / (s - z0); };
    auto sub = [&](double s) {
      const double d = s - z0;
      if (std::abs(d) < 1e-13) return sp.nu_prime(z0);
      return (sp.nu(s) - n0) / d;
    };
    auto minus_const = [&](double s) { return -n0 / (s - z0); };
    const double c = z0 - 1.0;
    // far part (−∞, z0 − 1] where χ = 0
    beta += piecewise(sp, plain, a, std::min(c, b));
    // near part (z0 − 1, z0) with the subtraction; ν = 0 outside [a, b]
    const double lo = std::max(c, a);
    const double hi = std::min(z0, b);
    if (hi > lo) beta += piecewise(sp, sub, lo, hi);
    if (a > c) beta += piecewise(sp, minus_const, c, std::min(a, z0));
  }
  out.beta_at_z0 = beta;
  out.T0 = blaschke(cplx{z0, 0.0}, data, z0) * std::exp(cplx{0.0, beta});
  return out;
}

double stieltjes_log(double z0, const ContinuousSpectrum& sp) {
  if (sp.trivial()) return 0.0;
  const double a = sp.lower();
  const double b = std::min(z0, sp.upper());
  if (!(b > a)) return 0.0;
  auto f = [&](double s) {
    const double d = z0 - s;
    if (d <= 0.0) return 0.0;
    return std::log(d) * sp.nu_prime(s);
  };
  if (z0 > sp.upper()) return piecewise(sp, f, a, b);
  // the cell ending at z0 carries the logarithmic endpoint singularity
  const auto& knots = sp.z_grid();
  auto it = std::lower_bound(knots.begin(), knots.end(), b);
  const double tiny = 1e-9 * (knots.back() - knots.front()) / static_cast<double>(knots.size());
  if (it != knots.begin() && b - *(it - 1) < tiny) --it;
  const double near = std::max(a, it == knots.begin() ? a : *(it - 1));
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  double l1 = 0.0;
  double value = near < b ? ts.integrate(f, near, b, 1e-13, &err, &l1) : 0.0;
  if (!(err <= 1e-9 * std::max(1.0, l1))) throw ToleranceError("stieltjes_log: quadrature failure");
  value += piecewise(sp, f, a, near);
  return value;
}

cplx r0(double z0, double t, const ContinuousSpectrum& sp, const SolitonData& data, double gamma,
        ThetaConstant variant) {
  if (!(t > 0.0)) throw DomainError("r0 requires t > 0");
  const cplx rz = sp.r(z0);
  if (rz == 0.0) return 0.0;
  const double n0 = sp.nu(z0);
  const cplx t0 = T0_and_beta(z0, data, sp).T0;
  const double phase = n0 * std::log(8.0 * t) - 4.0 * t * z0 * z0 - 2.0 * theta_shift(variant, gamma) * t;
  return rz / (t0 * t0) * std::exp(cplx{0.0, phase});
}

}  // namespace cgnls
