#pragma once

#include <vector>

#include "cgnls/core.hpp"
#include "cgnls/spline.hpp"
#include "cgnls/types.hpp"

namespace cgnls {

// Continuous scattering data r(s) interpolated by natural cubic splines on
// its real and imaginary parts; r and ν vanish outside the sample grid.
class ContinuousSpectrum {
 public:
  ContinuousSpectrum() = default;
  explicit ContinuousSpectrum(const ScatteringData& data);
  ContinuousSpectrum(std::vector<double> z_grid, const CVec& r);

  bool trivial() const { return trivial_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  const std::vector<double>& z_grid() const { return z_grid_; }

  cplx r(double s) const;
  cplx r_prime(double s) const;
  double nu(double s) const;
  double nu_prime(double s) const;
  std::vector<double> nu_samples() const;

 private:
  bool trivial_ = true;
  double lower_ = 0.0;
  double upper_ = 0.0;
  std::vector<double> z_grid_;
  CubicSpline re_, im_;
};

enum class BoundarySide { plus, minus };

double nu(double s, const ContinuousSpectrum& spectrum);

// i ∫_{−∞}^{z0} ν(s)/(s − z) ds for z off the cut
cplx log_delta(cplx z, double z0, const ContinuousSpectrum& spectrum);
cplx delta(cplx z, double z0, const ContinuousSpectrum& spectrum);

// ∏_{Re z_k < z0} (z − z_k*)/(z − z_k)
cplx blaschke(cplx z, const SolitonData& data, double z0);

cplx T(cplx z, const SolitonData& data, double z0, const ContinuousSpectrum& spectrum);

// boundary values of T on the cut (−∞, z0) from above (plus) or below (minus)
cplx T_boundary(double z, BoundarySide side, const SolitonData& data, double z0, const ContinuousSpectrum& spectrum);

// β(z, z0) = −ν(z0) log(z − z0 + 1) + ∫_{−∞}^{z0} (ν(s) − χ(s)ν(z0))/(s − z) ds,
// χ the indicator of (z0 − 1, z0)
cplx beta_fn(cplx z, double z0, const ContinuousSpectrum& spectrum);

struct T0Beta {
  cplx T0;
  double beta_at_z0 = 0.0;
};

T0Beta T0_and_beta(double z0, const SolitonData& data, const ContinuousSpectrum& spectrum);

// ∫_{−∞}^{z0} ln|s − z0| ν'(s) ds
double stieltjes_log(double z0, const ContinuousSpectrum& spectrum);

cplx r0(double z0, double t, const ContinuousSpectrum& spectrum, const SolitonData& data, double gamma,
        ThetaConstant variant = ThetaConstant::half_gamma);

}  // namespace cgnls
