#pragma once

#include <memory>
#include <vector>

#include "cgnls/types.hpp"

namespace cgnls {

// Periodic spectral calculus on a uniform grid. One instance owns its
// transform buffers, so it must not be shared between threads.
class Fourier {
 public:
  explicit Fourier(const SpatialGrid& grid);
  ~Fourier();
  Fourier(const Fourier&) = delete;
  Fourier& operator=(const Fourier&) = delete;
  Fourier(Fourier&&) noexcept;
  Fourier& operator=(Fourier&&) noexcept;

  const SpatialGrid& grid() const { return grid_; }
  std::size_t size() const { return n_; }
  // angular wavenumbers in FFT order
  const std::vector<double>& k() const { return k_; }
  double k_max() const;

  void forward(const CVec& f, CVec& f_hat);
  void backward(const CVec& f_hat, CVec& f);

  CVec derivative(const CVec& f, int order = 1);
  // F(x_j) = integral of f from x_min to x_j
  CVec antiderivative(const CVec& f);
  // samples of f(x + s)
  CVec shifted(const CVec& f, double s);
  // trigonometric interpolant of f at arbitrary x
  cplx evaluate(const CVec& f_hat, double x) const;
  // zero modes beyond two thirds of the Nyquist wavenumber
  void dealias(CVec& f_hat) const;

 private:
  struct Plans;
  SpatialGrid grid_;
  std::size_t n_ = 0;
  std::vector<double> k_;
  std::unique_ptr<Plans> plans_;
  CVec scratch_;
};

}  // namespace cgnls
