#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace cgnls {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx I_unit{0.0, 1.0};

struct EquationParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  bool finite() const;
};

class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(double x_min, double x_max, std::size_t n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t n_points() const { return n_; }
  double dx() const { return dx_; }
  double length() const { return x_max_ - x_min_; }
  double x(std::size_t j) const { return x_min_ + dx_ * static_cast<double>(j); }
  std::vector<double> points() const;

  friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) {
    return a.x_min_ == b.x_min_ && a.x_max_ == b.x_max_ && a.n_ == b.n_;
  }

 private:
  double x_min_ = 0.0;
  double x_max_ = 1.0;
  std::size_t n_ = 0;
  double dx_ = 0.0;
};

struct FieldState {
  SpatialGrid grid;
  double t = 0.0;
  CVec u;
  CVec v;
  EquationParams params;

  static FieldState zeros(const SpatialGrid& grid, const EquationParams& params, double t = 0.0);
  void check_shape() const;
  // max |v + conj(u)| over the grid
  double reduction_defect() const;
};

struct SolitonEntry {
  cplx z;
  cplx c;
};

struct SolitonData {
  std::vector<SolitonEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  void validate() const;
};

struct ScatteringData {
  std::vector<double> z_grid;
  CVec r;
  std::vector<SolitonEntry> discrete;

  SolitonData solitons() const { return SolitonData{discrete}; }
  void validate() const;
};

struct ConeSpec {
  double x1 = 0.0;
  double x2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double s) const { return s >= lo && s <= hi; }
  double distance(double s) const;
};

}  // namespace cgnls
