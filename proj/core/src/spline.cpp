#include "cgnls/spline.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include "cgnls/errors.hpp"

namespace cgnls {

struct CubicSpline::Impl {
  std::vector<double> x;
  std::vector<double> y;
  gsl_interp* interp = nullptr;

  Impl(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
    gsl_set_error_handler_off();
    interp = gsl_interp_alloc(gsl_interp_cspline, x.size());
    if (gsl_interp_init(interp, x.data(), y.data(), x.size()) != GSL_SUCCESS) {
      gsl_interp_free(interp);
      throw DomainError("spline: abscissae must be strictly increasing");
    }
  }
  ~Impl() { gsl_interp_free(interp); }
  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw DomainError("spline: x and y differ in length");
  if (x.size() < 3) throw DomainError("spline: need at least three nodes");
  impl_ = std::make_shared<const Impl>(std::move(x), std::move(y));
}

double CubicSpline::lower() const { return impl_ ? impl_->x.front() : 0.0; }
double CubicSpline::upper() const { return impl_ ? impl_->x.back() : 0.0; }

double CubicSpline::operator()(double s) const {
  if (!impl_ || s < impl_->x.front() || s > impl_->x.back()) return 0.0;
  return gsl_interp_eval(impl_->interp, impl_->x.data(), impl_->y.data(), s, nullptr);
}

double CubicSpline::derivative(double s) const {
  if (!impl_ || s < impl_->x.front() || s > impl_->x.back()) return 0.0;
  return gsl_interp_eval_deriv(impl_->interp, impl_->x.data(), impl_->y.data(), s, nullptr);
}

}  // namespace cgnls
