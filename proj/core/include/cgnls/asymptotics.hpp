#pragma once

#include <utility>

#include "cgnls/core.hpp"
#include "cgnls/soliton.hpp"
#include "cgnls/spectral.hpp"
#include "cgnls/types.hpp"

namespace cgnls {

struct OuterEvaluation {
  cplx m11 = 1.0;
  cplx m12 = 0.0;
  cplx m21 = 0.0;
  cplx m22 = 1.0;

  Mat2 matrix() const;
  cplx det() const { return m11 * m22 - m12 * m21; }
};

// Exponents of the radiation term. `derived` is the purely oscillatory
// phase i(x²/4t + αx/2 + α²t/4 + γt) ∓ iν log 8t; `printed` keeps the real
// −2αx term, `printed_imaginary` reads it as −2iαx.
enum class ThetaForm { derived, printed, printed_imaginary };

// coefficient of the m12² (resp. m21²) term: 1/√2 or 1/(2√2)
enum class CrossCoefficient { inv_sqrt2, inv_2sqrt2 };

// |τ| = √|ν| or |τ| = |ν|
enum class TauModulus { sqrt_nu, nu };

struct AsymptoticOptions {
  // +1 for the t → +∞ formulas, −1 for t → −∞
  int branch = 1;
  ThetaForm theta_form = ThetaForm::derived;
  CrossCoefficient cross_coefficient = CrossCoefficient::inv_sqrt2;
  // sign of the cross term: −1 as derived, +1 as printed
  int cross_sign = -1;
  TauModulus tau_modulus = TauModulus::sqrt_nu;
  ThetaConstant theta_constant = ThetaConstant::half_gamma;
  double t_min = 10.0;
  // trapezoid nodes per unit length for the gauge integral
  double gauge_density = 20.0;
  // left end of the gauge integral relative to x
  double gauge_span = 40.0;
};

struct TauValue {
  cplx value = 0.0;
  // false when r(z0) = 0 and the radiation term vanishes
  bool nonzero = false;
};

struct RadiationTerms {
  cplx f1 = 0.0;
  cplx f2 = 0.0;
};

struct AsymptoticValue {
  double x = 0.0;
  double t = 0.0;
  double z0 = 0.0;
  cplx u_sol_term = 0.0;
  cplx v_sol_term = 0.0;
  cplx radiation_term = 0.0;
  cplx radiation_term_v = 0.0;
  cplx gauge_factor = 1.0;
  cplx u_pred = 0.0;
  cplx v_pred = 0.0;
  // remainder order claimed by the expansion: t^{−3/4}
  double error_order_claim = -0.75;
};

OuterEvaluation outer_at_z0(const SolitonData& data, double x, double t, const EquationParams& params,
                            const SolitonOptions& options = {});

TauValue tau(double z0, int sign, const ContinuousSpectrum& spectrum, TauModulus modulus = TauModulus::sqrt_nu);

// exponents θ1 (paired with τ) and θ2 (paired with τ*)
std::pair<cplx, cplx> radiation_exponents(double x, double t, double nu0, const EquationParams& params,
                                          const AsymptoticOptions& options = {});

RadiationTerms radiation_terms(double x, double t, const OuterEvaluation& m, cplx tau_value, double nu0,
                               const EquationParams& params, const AsymptoticOptions& options = {});

// the same terms assembled from the moment of the parabolic-cylinder model
// conjugated by the outer solution at z0
RadiationTerms radiation_terms_pc(double x, double t, const OuterEvaluation& m, const ContinuousSpectrum& spectrum,
                                  const EquationParams& params, const AsymptoticOptions& options = {});

double gauge_integrand(double t, cplx u_sol, cplx v_sol, cplx f1, cplx f2);

class Predictor {
 public:
  Predictor(const ScatteringData& data, const EquationParams& params, const ConeSpec& cone,
            const AsymptoticOptions& options = {});

  // cone constants of the discrete data alone; predictions additionally
  // apply the continuous-spectrum factor δ(z_k)^{−2} at the local z0
  const SolitonData& cone_data() const { return cone_data_; }
  SolitonData soliton_data(double z0) const;
  const ContinuousSpectrum& spectrum() const { return spectrum_; }
  const Interval& interval() const { return interval_; }
  // min over poles outside I of Im z_k · dist(Re z_k, I)
  double mu() const;

  AsymptoticValue predict(double x, double t) const;
  // integrand pieces at (x, t) without the gauge factor
  AsymptoticValue local_terms(double x, double t) const;

 private:
  SolitonData full_;
  SolitonData cone_data_;
  ContinuousSpectrum spectrum_;
  EquationParams params_;
  ConeSpec cone_;
  Interval interval_;
  AsymptoticOptions options_;
};

AsymptoticValue predict(double x, double t, const ConeSpec& cone, const ScatteringData& data,
                        const EquationParams& params, const AsymptoticOptions& options = {});

}  // namespace cgnls
