#include "cgnls/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cgnls/errors.hpp"
#include "cgnls/fourier.hpp"
#include "cgnls/parallel.hpp"

namespace cgnls {

namespace {

constexpr double edge_error = 1e-6;
constexpr double edge_warning = 1e-12;
constexpr int max_depth = 24;

std::string format_z(cplx z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

bool bounded(cplx z, JostSide side, int column) {
  double im = z.imag();
  if (side == JostSide::minus) return column == 1 ? im >= 0.0 : im <= 0.0;
  return column == 1 ? im <= 0.0 : im >= 0.0;
}

}  // namespace

ScatteringProblem::ScatteringProblem(const FieldState& state, const ScatteringOptions& options)
    : grid_(state.grid), options_(options) {
  state.check_shape();
  if (options_.substeps < 1) throw ConfigError("substeps must be positive");
  if (options_.edge_points < 8) throw ConfigError("edge_points must be at least 8");
  std::size_t n = grid_.n_points();
  double edge = std::max({std::abs(state.u.front()), std::abs(state.u.back()), std::abs(state.v.front()),
                          std::abs(state.v.back())});
  if (!std::isfinite(edge)) throw NonFiniteError("non-finite field at the grid edge");
  if (edge > edge_error) {
    std::ostringstream os;
    os << "potential not decayed at the grid edge: |field| = " << edge;
    throw TruncationError(os.str());
  }
  if (edge > edge_warning) {
    std::ostringstream os;
    os << "potential edge magnitude " << edge << " exceeds " << edge_warning;
    warnings_.push_back(os.str());
  }

  Fourier fourier(grid_);
  CVec q = state.u;
  CVec p = state.v;
  if (state.params.beta != 0.0) {
    CVec w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = -state.params.beta * state.u[j] * state.v[j];
    CVec g = fourier.antiderivative(w);
    for (std::size_t j = 0; j < n; ++j) {
      cplx e = std::exp(2.0 * I_unit * g[j]);
      q[j] /= e;
      p[j] *= e;
    }
  }
  int m_count = 2 * options_.substeps;
  q_.resize(static_cast<std::size_t>(m_count));
  p_.resize(static_cast<std::size_t>(m_count));
  q_[0] = q;
  p_[0] = p;
  for (int m = 1; m < m_count; ++m) {
    double s = grid_.dx() * m / m_count;
    q_[static_cast<std::size_t>(m)] = fourier.shifted(q, s);
    p_[static_cast<std::size_t>(m)] = fourier.shifted(p, s);
  }
}

// Lawson RK4: within each substep the free oscillation of one component is
// factored out exactly, leaving A' = f E N, N' = g A / E with E = e^{2iσzs}.
std::array<cplx, 2> ScatteringProblem::integrate(cplx z, JostSide side, int column, CVec* first,
                                                 CVec* second) const {
  const std::size_t n = grid_.n_points();
  const int S = options_.substeps;
  const std::size_t fine = 2 * static_cast<std::size_t>(S) * n;
  const bool col1 = column == 1;
  const double sigma = col1 ? 1.0 : -1.0;
  const std::vector<CVec>& f = col1 ? q_ : p_;
  const std::vector<CVec>& g = col1 ? p_ : q_;
  auto sample = [&](const std::vector<CVec>& h, std::size_t idx) {
    idx %= fine;
    std::size_t j = idx / (2 * static_cast<std::size_t>(S));
    std::size_t m = idx % (2 * static_cast<std::size_t>(S));
    return h[m][j];
  };

  // A is the non-oscillating component of the column
  cplx A = 1.0;
  cplx B = 0.0;
  if (first) first->assign(n, 0.0);
  if (second) second->assign(n, 0.0);
  auto store = [&](std::size_t j) {
    cplx m1 = col1 ? A : B;
    cplx m2 = col1 ? B : A;
    if (first) (*first)[j] = m1;
    if (second) (*second)[j] = m2;
  };

  const bool rightward = side == JostSide::minus;
  const double h = (rightward ? 1.0 : -1.0) * grid_.dx() / S;
  const cplx Em = std::exp(I_unit * sigma * z * h);
  const cplx E1 = Em * Em;
  if (rightward) store(0);
  for (std::size_t k = 0; k < static_cast<std::size_t>(S) * n; ++k) {
    std::size_t i0, im, i1;
    if (rightward) {
      i0 = 2 * k;
      im = i0 + 1;
      i1 = i0 + 2;
    } else {
      i0 = fine - 2 * k;
      im = i0 - 1;
      i1 = i0 - 2;
    }
    cplx f0 = sample(f, i0), fm = sample(f, im), f1 = sample(f, i1);
    cplx g0 = sample(g, i0), gm = sample(g, im), g1 = sample(g, i1);
    cplx N = B;
    cplx k1a = f0 * N;
    cplx k1n = g0 * A;
    cplx k2a = fm * Em * (N + 0.5 * h * k1n);
    cplx k2n = gm / Em * (A + 0.5 * h * k1a);
    cplx k3a = fm * Em * (N + 0.5 * h * k2n);
    cplx k3n = gm / Em * (A + 0.5 * h * k2a);
    cplx k4a = f1 * E1 * (N + h * k3n);
    cplx k4n = g1 / E1 * (A + h * k3a);
    A += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    N += h / 6.0 * (k1n + 2.0 * k2n + 2.0 * k3n + k4n);
    B = E1 * N;
    if ((k + 1) % static_cast<std::size_t>(S) == 0) {
      std::size_t node = (k + 1) / static_cast<std::size_t>(S);
      if (rightward) {
        if (node < n) store(node);
      } else {
        store(n - node);
      }
    }
  }
  if (!std::isfinite(std::abs(A)) || !std::isfinite(std::abs(B)))
    throw NonFiniteError("Jost integration overflow at z = " + format_z(z));
  return col1 ? std::array<cplx, 2>{A, B} : std::array<cplx, 2>{B, A};
}

JostSolution ScatteringProblem::jost_column(cplx z, JostSide side, int column) const {
  if (column != 1 && column != 2) throw DomainError("Jost column must be 1 or 2");
  if (!bounded(z, side, column))
    throw DomainError("Jost column " + std::to_string(column) + " is not bounded at z = " + format_z(z));
  JostSolution sol;
  sol.z = z;
  sol.side = side;
  sol.column = column;
  sol.values_end = integrate(z, side, column, &sol.first, &sol.second);
  return sol;
}

JostPair ScatteringProblem::jost(cplx z, JostSide side) const {
  JostPair pair;
  if (bounded(z, side, 1)) pair.first = jost_column(z, side, 1);
  if (bounded(z, side, 2)) pair.second = jost_column(z, side, 2);
  return pair;
}

cplx ScatteringProblem::s11(cplx z) const {
  if (z.imag() < 0.0) throw DomainError("s11 is only continued into the upper half-plane");
  return integrate(z, JostSide::minus, 1, nullptr, nullptr)[0];
}

ScatteringCoeffs ScatteringProblem::coeffs(double z) const {
  auto end = integrate(cplx(z, 0.0), JostSide::minus, 1, nullptr, nullptr);
  ScatteringCoeffs c;
  c.s11 = end[0];
  c.s21 = end[1] * std::exp(-2.0 * I_unit * z * grid_.x_max());
  if (std::abs(c.s11) < 1e-10) {
    std::ostringstream os;
    os << "s11 vanishes on the real line at z = " << z;
    throw SpectralSingularity(os.str());
  }
  return c;
}

Mat2 ScatteringProblem::S(double z) const {
  ScatteringCoeffs c = coeffs(z);
  auto end2 = integrate(cplx(z, 0.0), JostSide::minus, 2, nullptr, nullptr);
  Mat2 s;
  s(0, 0) = c.s11;
  s(1, 0) = c.s21;
  s(0, 1) = end2[0] * std::exp(2.0 * I_unit * z * grid_.x_max());
  s(1, 1) = end2[1];
  return s;
}

cplx ScatteringProblem::s11_derivative(cplx z) const {
  constexpr int points = 32;
  double rho = std::min(0.05, 0.5 * z.imag());
  if (rho <= 0.0) {
    double h = 1e-5;
    return (s11(z + cplx(h, 0.0)) - s11(z - cplx(h, 0.0))) / (2.0 * h);
  }
  cplx sum = 0.0;
  for (int k = 0; k < points; ++k) {
    cplx e = std::polar(1.0, 2.0 * pi * k / points);
    sum += s11(z + rho * e) / e;
  }
  return sum / (rho * points);
}

ScatteringData ScatteringProblem::reflection_grid(const std::vector<double>& z_grid) const {
  ScatteringData data;
  data.z_grid = z_grid;
  data.r.assign(z_grid.size(), 0.0);
  parallel_for(z_grid.size(), [&](std::size_t i) {
    ScatteringCoeffs c = coeffs(z_grid[i]);
    data.r[i] = c.s21 / c.s11;
  });
  return data;
}

// Winding number of s11 around the rectangle [lo, hi]; returns -1 when s11
// nearly vanishes on the boundary.
int ScatteringProblem::winding(cplx lo, cplx hi) const {
  const int m = options_.edge_points;
  std::vector<cplx> corners{lo, cplx(hi.real(), lo.imag()), hi, cplx(lo.real(), hi.imag())};
  std::vector<cplx> pts;
  pts.reserve(4 * static_cast<std::size_t>(m));
  for (int e = 0; e < 4; ++e) {
    cplx a = corners[static_cast<std::size_t>(e)];
    cplx b = corners[static_cast<std::size_t>((e + 1) % 4)];
    for (int k = 0; k < m; ++k) pts.push_back(a + (b - a) * (static_cast<double>(k) / m));
  }
  std::vector<cplx> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = s11(pts[i]); });

  double scale = 0.0;
  for (cplx v : vals) scale = std::max(scale, std::abs(v));
  constexpr double tiny = 1e-9;
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    cplx za = pts[i];
    cplx zb = pts[(i + 1) % pts.size()];
    cplx fa = vals[i];
    cplx fb = vals[(i + 1) % pts.size()];
    if (std::abs(fa) < tiny * scale) return -1;
    // refine segments whose phase change is too large to resolve
    std::vector<std::pair<cplx, cplx>> seg{{za, fa}, {zb, fb}};
    int guard = 0;
    std::size_t s = 0;
    while (s + 1 < seg.size()) {
      double d = std::arg(seg[s + 1].second / seg[s].second);
      if (std::abs(d) > pi / 3.0 && guard < 64) {
        cplx zm = 0.5 * (seg[s].first + seg[s + 1].first);
        cplx fm = s11(zm);
        if (std::abs(fm) < tiny * scale) return -1;
        seg.insert(seg.begin() + static_cast<std::ptrdiff_t>(s) + 1, {zm, fm});
        ++guard;
        continue;
      }
      total += d;
      ++s;
    }
  }
  double w = total / (2.0 * pi);
  double rounded = std::round(w);
  if (std::abs(w - rounded) > 0.1) return -1;
  return static_cast<int>(rounded);
}

void ScatteringProblem::search_cell(cplx lo, cplx hi, int w, int depth, std::vector<cplx>& roots) const {
  if (w <= 0) return;
  double size = std::max(hi.real() - lo.real(), hi.imag() - lo.imag());
  if (w == 1 && size <= options_.cell_size) {
    cplx z = 0.5 * (lo + hi);
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      double h = 1e-6 * std::max(1.0, std::abs(z));
      cplx f = s11(z);
      cplx df = (s11(z + h) - s11(z - h)) / (2.0 * h);
      if (df == 0.0) break;
      cplx dz = f / df;
      z -= dz;
      if (z.imag() < 0.0) break;
      if (std::abs(dz) < options_.newton_tol * std::max(1.0, std::abs(z))) {
        ok = true;
        break;
      }
    }
    double margin = 0.05 * size;
    bool inside = z.real() >= lo.real() - margin && z.real() <= hi.real() + margin && z.imag() >= lo.imag() - margin &&
                  z.imag() <= hi.imag() + margin;
    if (ok && inside) {
      roots.push_back(z);
      return;
    }
  }
  if (w >= 2 && size < 1e-4)
    throw AssumptionViolation("non-simple zero of s11 near z = " + format_z(0.5 * (lo + hi)));
  if (depth >= max_depth) throw SearchFailure("zero search did not converge near z = " + format_z(0.5 * (lo + hi)));

  for (double frac : {0.4873, 0.5391, 0.4419}) {
    double xs = lo.real() + frac * (hi.real() - lo.real());
    double ys = lo.imag() + frac * (hi.imag() - lo.imag());
    std::array<std::pair<cplx, cplx>, 4> cells{{{lo, cplx(xs, ys)},
                                               {cplx(xs, lo.imag()), cplx(hi.real(), ys)},
                                               {cplx(lo.real(), ys), cplx(xs, hi.imag())},
                                               {cplx(xs, ys), hi}}};
    std::array<int, 4> ws{};
    bool valid = true;
    int sum = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      ws[c] = winding(cells[c].first, cells[c].second);
      if (ws[c] < 0) {
        valid = false;
        break;
      }
      sum += ws[c];
    }
    if (!valid || sum != w) continue;
    for (std::size_t c = 0; c < 4; ++c) search_cell(cells[c].first, cells[c].second, ws[c], depth + 1, roots);
    return;
  }
  throw SearchFailure("inconsistent winding numbers near z = " + format_z(0.5 * (lo + hi)));
}

std::vector<cplx> ScatteringProblem::find_discrete_spectrum(const SearchBox& box) const {
  if (!(box.re_min < box.re_max) || !(box.im_min < box.im_max) || box.im_min <= 0.0)
    throw DomainError("search box must be a nondegenerate rectangle in the open upper half-plane");
  cplx lo(box.re_min, box.im_min);
  cplx hi(box.re_max, box.im_max);
  int w = winding(lo, hi);
  if (w < 0) throw SearchFailure("s11 vanishes on the search box boundary");
  std::vector<cplx> roots;
  search_cell(lo, hi, w, 0, roots);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i] - roots[i - 1]) < 1e-8)
      throw AssumptionViolation("repeated zero of s11 at z = " + format_z(roots[i]));
  if (static_cast<int>(roots.size()) != w) {
    std::ostringstream os;
    os << "winding number " << w << " but " << roots.size() << " zeros refined";
    throw SearchFailure(os.str());
  }
  for (cplx z : roots) {
    if (std::abs(s11_derivative(z)) < 1e-8) throw AssumptionViolation("s11'(z_k) vanishes at z = " + format_z(z));
  }
  return roots;
}

cplx ScatteringProblem::proportionality(cplx zk, double* residual) const {
  if (zk.imag() <= 0.0) throw DomainError("eigenvalue must lie in the upper half-plane");
  JostSolution left = jost_column(zk, JostSide::minus, 1);
  JostSolution right = jost_column(zk, JostSide::plus, 2);
  std::size_t n = grid_.n_points();
  double wmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) wmax = std::max(wmax, std::abs(q_[0][j]) + std::abs(p_[0][j]));
  if (wmax == 0.0) throw NotAnEigenvalue("zero potential has no eigenvalues");
  cplx num = 0.0;
  double den = 0.0;
  std::vector<std::size_t> window;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(q_[0][j]) + std::abs(p_[0][j]) < 0.1 * wmax) continue;
    window.push_back(j);
  }
  std::vector<std::array<cplx, 2>> A(window.size()), B(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    std::size_t j = window[i];
    cplx e = std::exp(2.0 * I_unit * zk * grid_.x(j));
    A[i] = {e * right.first[j], e * right.second[j]};
    B[i] = {left.first[j], left.second[j]};
    for (int c = 0; c < 2; ++c) {
      num += std::conj(A[i][static_cast<std::size_t>(c)]) * B[i][static_cast<std::size_t>(c)];
      den += std::norm(A[i][static_cast<std::size_t>(c)]);
    }
  }
  if (den == 0.0 || !std::isfinite(den)) throw NotAnEigenvalue("degenerate Jost columns at z = " + format_z(zk));
  cplx b = num / den;
  double err = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (int c = 0; c < 2; ++c) {
      err += std::norm(B[i][static_cast<std::size_t>(c)] - b * A[i][static_cast<std::size_t>(c)]);
      norm += std::norm(B[i][static_cast<std::size_t>(c)]);
    }
  }
  double res = std::sqrt(err / norm);
  if (residual) *residual = res;
  return b;
}

cplx ScatteringProblem::norming_constant(cplx zk) const {
  double res = 0.0;
  cplx b = proportionality(zk, &res);
  if (res > 1e-6) {
    std::ostringstream os;
    os << "Jost columns not proportional at z = " << format_z(zk) << " (residual " << res << ")";
    throw NotAnEigenvalue(os.str());
  }
  cplx ds = s11_derivative(zk);
  if (std::abs(ds) < 1e-8) throw AssumptionViolation("s11'(z_k) vanishes at z = " + format_z(zk));
  return b / ds;
}

ScatteringData ScatteringProblem::scatter(const std::vector<double>& z_grid, const SearchBox& box) const {
  ScatteringData data = reflection_grid(z_grid);
  for (cplx z : find_discrete_spectrum(box)) data.discrete.push_back({z, norming_constant(z)});
  return data;
}

JostPair jost(const FieldState& state, cplx z, JostSide side) { return ScatteringProblem(state).jost(z, side); }

ScatteringCoeffs scattering_coeffs(const FieldState& state, double z) { return ScatteringProblem(state).coeffs(z); }

ScatteringData reflection_grid(const FieldState& state, const std::vector<double>& z_grid) {
  return ScatteringProblem(state).reflection_grid(z_grid);
}

std::vector<cplx> find_discrete_spectrum(const FieldState& state, const SearchBox& box) {
  return ScatteringProblem(state).find_discrete_spectrum(box);
}

cplx norming_constant(const FieldState& state, cplx zk) { return ScatteringProblem(state).norming_constant(zk); }

std::vector<double> uniform_z_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo < hi)) throw DomainError("z grid needs at least two points and lo < hi");
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return z;
}

}  // namespace cgnls
