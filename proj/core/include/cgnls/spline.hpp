#pragma once

#include <memory>
#include <vector>

namespace cgnls {

// Natural cubic spline through (x_j, y_j); immutable and cheap to copy.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  bool empty() const { return !impl_; }
  double lower() const;
  double upper() const;
  // both return 0 outside [lower, upper]
  double operator()(double s) const;
  double derivative(double s) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace cgnls
