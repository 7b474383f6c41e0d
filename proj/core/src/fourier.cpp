#include "cgnls/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace cgnls {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fourier::Plans {
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Plans(std::size_t n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    in = fftw_alloc_complex(n);
    out = fftw_alloc_complex(n);
    const int ni = static_cast<int>(n);
    fwd = fftw_plan_dft_1d(ni, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(ni, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(in);
    fftw_free(out);
  }
};

Fourier::Fourier(const SpatialGrid& grid)
    : grid_(grid), n_(grid.n_points()), k_(grid.n_points()), plans_(std::make_unique<Plans>(grid.n_points())),
      scratch_(grid.n_points()) {
  const double base = 2.0 * pi / grid.length();
  const auto n = static_cast<long>(n_);
  for (long j = 0; j < n; ++j) {
    const long m = j < n / 2 ? j : j - n;
    k_[static_cast<std::size_t>(j)] = base * static_cast<double>(m);
  }
}

Fourier::~Fourier() = default;
Fourier::Fourier(Fourier&&) noexcept = default;
Fourier& Fourier::operator=(Fourier&&) noexcept = default;

double Fourier::k_max() const { return 2.0 * pi / grid_.length() * static_cast<double>(n_ / 2); }

void Fourier::forward(const CVec& f, CVec& f_hat) {
  std::copy(f.begin(), f.end(), reinterpret_cast<cplx*>(plans_->in));
  fftw_execute(plans_->fwd);
  f_hat.resize(n_);
  std::copy_n(reinterpret_cast<const cplx*>(plans_->out), n_, f_hat.begin());
}

void Fourier::backward(const CVec& f_hat, CVec& f) {
  std::copy(f_hat.begin(), f_hat.end(), reinterpret_cast<cplx*>(plans_->in));
  fftw_execute(plans_->bwd);
  f.resize(n_);
  const double scale = 1.0 / static_cast<double>(n_);
  const auto* o = reinterpret_cast<const cplx*>(plans_->out);
  for (std::size_t j = 0; j < n_; ++j) f[j] = o[j] * scale;
}

CVec Fourier::derivative(const CVec& f, int order) {
  forward(f, scratch_);
  const std::size_t nyq = n_ / 2;
  for (std::size_t j = 0; j < n_; ++j) {
    cplx ik{0.0, k_[j]};
    if (j == nyq && order % 2 == 1) ik = 0.0;
    scratch_[j] *= std::pow(ik, order);
  }
  CVec out;
  backward(scratch_, out);
  return out;
}

CVec Fourier::antiderivative(const CVec& f) {
  forward(f, scratch_);
  const cplx mean = scratch_[0] / static_cast<double>(n_);
  scratch_[0] = 0.0;
  scratch_[n_ / 2] = 0.0;
  for (std::size_t j = 1; j < n_; ++j) {
    if (j == n_ / 2) continue;
    scratch_[j] /= cplx{0.0, k_[j]};
  }
  CVec out;
  backward(scratch_, out);
  const cplx p0 = out[0];
  for (std::size_t j = 0; j < n_; ++j) out[j] = out[j] - p0 + mean * (grid_.x(j) - grid_.x_min());
  return out;
}

CVec Fourier::shifted(const CVec& f, double s) {
  forward(f, scratch_);
  const std::size_t nyq = n_ / 2;
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == nyq) {
      scratch_[j] *= std::cos(k_[j] * s);
    } else {
      scratch_[j] *= std::exp(cplx{0.0, k_[j] * s});
    }
  }
  CVec out;
  backward(scratch_, out);
  return out;
}

cplx Fourier::evaluate(const CVec& f_hat, double x) const {
  const double y = x - grid_.x_min();
  cplx sum = 0.0;
  const std::size_t nyq = n_ / 2;
  for (std::size_t j = 0; j < n_; ++j) {
    if (j == nyq) {
      sum += f_hat[j] * std::cos(k_[j] * y);
    } else {
      sum += f_hat[j] * std::exp(cplx{0.0, k_[j] * y});
    }
  }
  return sum / static_cast<double>(n_);
}

void Fourier::dealias(CVec& f_hat) const {
  const double cut = 2.0 / 3.0 * k_max();
  for (std::size_t j = 0; j < n_; ++j) {
    if (std::abs(k_[j]) > cut) f_hat[j] = 0.0;
  }
}

}  // namespace cgnls
