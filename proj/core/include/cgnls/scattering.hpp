#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cgnls/types.hpp"

namespace cgnls {

enum class JostSide { minus, plus };

// One column of μ± (μ = ψ e^{izxσ3}), sampled on the grid nodes of the
// potential. `values_end` holds the column at the opposite end of the
// domain from its anchor.
struct JostSolution {
  cplx z;
  JostSide side = JostSide::minus;
  int column = 1;
  CVec first;
  CVec second;
  std::array<cplx, 2> values_end{};
};

struct JostPair {
  std::optional<JostSolution> first;
  std::optional<JostSolution> second;
};

struct SearchBox {
  double re_min = -3.0;
  double re_max = 3.0;
  double im_min = 0.05;
  double im_max = 3.0;
};

struct ScatteringOptions {
  // RK4 substeps per grid cell
  int substeps = 2;
  int edge_points = 64;
  double cell_size = 0.1;
  double newton_tol = 1e-12;
};

struct ScatteringCoeffs {
  cplx s11;
  cplx s21;
};

// Direct scattering for the x-part of the Lax pair with the quadratic
// gauge removed: μ_x + iz[σ3, μ] = Q μ, Q = (0 q; p 0).
class ScatteringProblem {
 public:
  explicit ScatteringProblem(const FieldState& state, const ScatteringOptions& options = {});

  const SpatialGrid& grid() const { return grid_; }
  const ScatteringOptions& options() const { return options_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const CVec& q() const { return q_[0]; }
  const CVec& p() const { return p_[0]; }

  JostSolution jost_column(cplx z, JostSide side, int column) const;
  JostPair jost(cplx z, JostSide side) const;

  // s11 continued into the closed upper half-plane
  cplx s11(cplx z) const;
  ScatteringCoeffs coeffs(double z) const;
  // full scattering matrix on the real line
  Mat2 S(double z) const;
  cplx s11_derivative(cplx z) const;

  ScatteringData reflection_grid(const std::vector<double>& z_grid) const;
  std::vector<cplx> find_discrete_spectrum(const SearchBox& box) const;
  cplx norming_constant(cplx zk) const;
  // proportionality constant b with μ−,1(z_k) = b e^{2iz_k x} μ+,2(z_k)
  cplx proportionality(cplx zk, double* residual = nullptr) const;
  ScatteringData scatter(const std::vector<double>& z_grid, const SearchBox& box) const;

 private:
  std::array<cplx, 2> integrate(cplx z, JostSide side, int column, CVec* first, CVec* second) const;
  int winding(cplx lo, cplx hi) const;
  void search_cell(cplx lo, cplx hi, int w, int depth, std::vector<cplx>& roots) const;

  SpatialGrid grid_;
  ScatteringOptions options_;
  // q_[m][j] = q(x_j + m·dx/(2·substeps))
  std::vector<CVec> q_;
  std::vector<CVec> p_;
  std::vector<std::string> warnings_;
};

JostPair jost(const FieldState& state, cplx z, JostSide side);
ScatteringCoeffs scattering_coeffs(const FieldState& state, double z);
ScatteringData reflection_grid(const FieldState& state, const std::vector<double>& z_grid);
std::vector<cplx> find_discrete_spectrum(const FieldState& state, const SearchBox& box);
cplx norming_constant(const FieldState& state, cplx zk);

std::vector<double> uniform_z_grid(double lo, double hi, std::size_t n);

}  // namespace cgnls
