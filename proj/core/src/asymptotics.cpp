#include "cgnls/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "cgnls/errors.hpp"
#include "cgnls/pcmodel.hpp"
#include "cgnls/special.hpp"

namespace cgnls {

namespace {

double cross_coefficient(CrossCoefficient c) {
  return c == CrossCoefficient::inv_sqrt2 ? 1.0 / std::sqrt(2.0) : 1.0 / (2.0 * std::sqrt(2.0));
}

}  // namespace

Mat2 OuterEvaluation::matrix() const {
  Mat2 m;
  m << m11, m12, m21, m22;
  return m;
}

OuterEvaluation outer_at_z0(const SolitonData& data, double x, double t, const EquationParams& params,
                            const SolitonOptions& options) {
  const double z0 = phase_point(x, t, params);
  OuterEvaluation out;
  if (data.empty()) return out;
  const Mat2 m = nsoliton(data, x, t, params, options).M(cplx{z0, 0.0});
  out.m11 = m(0, 0);
  out.m12 = m(0, 1);
  out.m21 = m(1, 0);
  out.m22 = m(1, 1);
  return out;
}

TauValue tau(double z0, int sign, const ContinuousSpectrum& spectrum, TauModulus modulus) {
  if (sign != 1 && sign != -1) throw DomainError("tau sign must be +1 or -1");
  TauValue out;
  if (spectrum.trivial()) return out;
  const cplx r = spectrum.r(z0);
  const double n0 = spectrum.nu(z0);
  if (r == 0.0 || n0 == 0.0) return out;
  const double mod = modulus == TauModulus::sqrt_nu ? std::sqrt(std::abs(n0)) : std::abs(n0);
  const double phase = pi / 4.0 + std::arg(complex_gamma(cplx{0.0, n0})) - std::arg(r) -
                       2.0 * sign * stieltjes_log(z0, spectrum);
  out.value = std::polar(mod, phase);
  out.nonzero = true;
  return out;
}

std::pair<cplx, cplx> radiation_exponents(double x, double t, double nu0, const EquationParams& params,
                                          const AsymptoticOptions& options) {
  if (t == 0.0) throw DomainError("radiation exponents need t != 0");
  const double a = params.alpha;
  const double log_term = options.branch * nu0 * std::log(8.0 * std::abs(t));
  if (options.theta_form == ThetaForm::derived) {
    const double kappa = theta_shift(options.theta_constant, params.gamma);
    const double phase = x * x / (4.0 * t) + a * x / 2.0 + a * a * t / 4.0 + 2.0 * kappa * t - log_term;
    return {cplx{0.0, phase}, cplx{0.0, -phase}};
  }
  const double osc = x * x / (4.0 * t) + a * a * t / 4.0 - log_term;
  const cplx drift = options.theta_form == ThetaForm::printed ? cplx{-2.0 * a * x, 0.0} : cplx{0.0, -2.0 * a * x};
  return {cplx{0.0, osc} + drift, cplx{0.0, -osc} + drift};
}

RadiationTerms radiation_terms(double x, double t, const OuterEvaluation& m, cplx tau_value, double nu0,
                               const EquationParams& params, const AsymptoticOptions& options) {
  RadiationTerms f;
  if (tau_value == 0.0) return f;
  const auto [th1, th2] = radiation_exponents(x, t, nu0, params, options);
  const double c1 = 1.0 / std::sqrt(2.0);
  const double c2 = options.cross_sign * cross_coefficient(options.cross_coefficient);
  const cplx a = tau_value * std::exp(th1);
  const cplx b = std::conj(tau_value) * std::exp(th2);
  f.f1 = c1 * m.m11 * m.m11 * a + c2 * m.m12 * m.m12 * b;
  f.f2 = -c2 * m.m21 * m.m21 * a - c1 * m.m22 * m.m22 * b;
  return f;
}

RadiationTerms radiation_terms_pc(double x, double t, const OuterEvaluation& m, const ContinuousSpectrum& spectrum,
                                  const EquationParams& params, const AsymptoticOptions& options) {
  RadiationTerms f;
  if (spectrum.trivial()) return f;
  const double z0 = phase_point(x, t, params);
  const cplx rho = r0(z0, t, spectrum, SolitonData{}, params.gamma, options.theta_constant);
  if (rho == 0.0) return f;
  const Mat2 m1 = pc_moment(pc_coefficients(rho));
  // (m M1 m^{-1}) entries (1,2) and (2,1) with M1 = (0 B; C 0)
  const Mat2 outer = m.matrix();
  const Mat2 moment = outer * m1 * outer.inverse();
  const double c = 1.0 / std::sqrt(2.0);
  f.f1 = c * moment(0, 1);
  f.f2 = -c * moment(1, 0);
  return f;
}

double gauge_integrand(double t, cplx u_sol, cplx v_sol, cplx f1, cplx f2) {
  if (t == 0.0) throw DomainError("gauge integrand needs t != 0");
  return std::abs(u_sol * v_sol + f1 * f2 / t);
}

Predictor::Predictor(const ScatteringData& data, const EquationParams& params, const ConeSpec& cone,
                     const AsymptoticOptions& options)
    : full_(data.solitons()), params_(params), cone_(cone), options_(options) {
  data.validate();
  if (!params.finite()) throw DomainError("equation parameters must be finite");
  if (options.branch != 1 && options.branch != -1) throw ConfigError("branch must be +1 or -1");
  if (!data.z_grid.empty()) spectrum_ = ContinuousSpectrum(data);
  interval_ = cone_interval(cone);
  cone_data_ = cone_constants(full_, interval_, options.branch);
}

double Predictor::mu() const {
  double mu = std::numeric_limits<double>::infinity();
  for (const auto& e : full_.entries) {
    const double d = interval_.distance(e.z.real());
    if (d > 0.0) mu = std::min(mu, e.z.imag() * d);
  }
  return mu;
}

SolitonData Predictor::soliton_data(double z0) const {
  if (spectrum_.trivial()) return cone_data_;
  return cone_constants(modified_constants(full_, z0, spectrum_), interval_, options_.branch);
}

AsymptoticValue Predictor::local_terms(double x, double t) const {
  AsymptoticValue out;
  out.x = x;
  out.t = t;
  out.z0 = phase_point(x, t, params_);
  const SolitonOptions sopt{options_.theta_constant};
  const bool radiation = !spectrum_.trivial();
  const SolitonData outer_data = radiation ? modified_constants(full_, out.z0, spectrum_) : full_;
  const SolitonData local = radiation ? cone_constants(outer_data, interval_, options_.branch) : cone_data_;
  if (!local.empty()) {
    const ReflectionlessSolution sol = nsoliton(local, x, t, params_, sopt);
    out.u_sol_term = sol.u_sol;
    out.v_sol_term = sol.v_sol;
  }
  if (radiation) {
    const TauValue tv = tau(out.z0, options_.branch, spectrum_, options_.tau_modulus);
    if (tv.nonzero) {
      const OuterEvaluation m = outer_at_z0(outer_data, x, t, params_, sopt);
      const RadiationTerms f = radiation_terms(x, t, m, tv.value, spectrum_.nu(out.z0), params_, options_);
      const double scale = 1.0 / std::sqrt(std::abs(t));
      out.radiation_term = scale * f.f1;
      out.radiation_term_v = scale * f.f2;
    }
  }
  out.u_pred = out.u_sol_term + out.radiation_term;
  out.v_pred = out.v_sol_term + out.radiation_term_v;
  return out;
}

AsymptoticValue Predictor::predict(double x, double t) const {
  if (std::abs(t) < options_.t_min) throw DomainError("prediction requires |t| >= t_min");
  if (options_.branch * t < 0.0) throw DomainError("sign of t does not match the selected branch");
  if (!in_cone(cone_, x, t)) throw DomainError("(x, t) lies outside the cone");
  AsymptoticValue out = local_terms(x, t);
  if (params_.beta != 0.0) {
    const std::size_t n =
        static_cast<std::size_t>(std::ceil(options_.gauge_span * options_.gauge_density)) + 1;
    const double h = options_.gauge_span / static_cast<double>(n - 1);
    double integral = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double s = x - options_.gauge_span + h * static_cast<double>(j);
      const AsymptoticValue p = j + 1 == n ? out : local_terms(s, t);
      // radiation terms already carry t^{−1/2}, so their product carries t^{−1}
      const double w = std::abs(p.u_sol_term * p.v_sol_term + p.radiation_term * p.radiation_term_v);
      integral += (j == 0 || j + 1 == n ? 0.5 : 1.0) * w;
    }
    integral *= h;
    out.gauge_factor = std::exp(cplx{0.0, 2.0 * params_.beta * integral});
  }
  out.u_pred = (out.u_sol_term + out.radiation_term) * out.gauge_factor;
  out.v_pred = (out.v_sol_term + out.radiation_term_v) * std::conj(out.gauge_factor);
  return out;
}

AsymptoticValue predict(double x, double t, const ConeSpec& cone, const ScatteringData& data,
                        const EquationParams& params, const AsymptoticOptions& options) {
  return Predictor(data, params, cone, options).predict(x, t);
}

}  // namespace cgnls
