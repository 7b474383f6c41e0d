#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cgnls/fourier.hpp"
#include "cgnls/types.hpp"

namespace cgnls {

enum class Scheme { if_rk4, etdrk4 };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct SolverConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::if_rk4;
  bool dealias = true;
  int monitor_stride = 1;
};

struct ConservationReport {
  double t = 0.0;
  double law_residual = 0.0;
  double quadrature_mass = 0.0;
};

struct Rates {
  CVec du;
  CVec dv;
};

// Which sign of the αβ·uv term enters the diagonal coefficient a1 of the
// t-part of the Lax pair. `derived` makes the zero-curvature condition
// reproduce the evolution equations; `printed` is kept for comparison.
enum class LaxA1 { derived, printed };

Rates rhs(const FieldState& state);

// dt ≤ min(0.5, dx) / max(1, max|u|·max|v|·(1+β²))
double stability_limit(const FieldState& state);

class Stepper {
 public:
  Stepper(const SpatialGrid& grid, const EquationParams& params, const SolverConfig& cfg);

  const SolverConfig& config() const { return cfg_; }
  // advances in place by one dt; throws BlowUpError when the state leaves 1e6
  void step(FieldState& state);
  // steps until t_end (the final step is shortened if needed); the
  // observer is called after every monitor_stride steps and at the end
  void run(FieldState& state, double t_end, const std::function<void(const FieldState&)>& observer = {});

 private:
  void advance(FieldState& state, double dt);
  void nonlinear(const CVec& u_hat, const CVec& v_hat, CVec& nu_hat, CVec& nv_hat);
  void prepare(double dt);
  void step_if_rk4(CVec& u_hat, CVec& v_hat);
  void step_etdrk4(CVec& u_hat, CVec& v_hat);

  SpatialGrid grid_;
  EquationParams params_;
  SolverConfig cfg_;
  Fourier fft_;
  double prepared_dt_ = -1.0;
  std::vector<cplx> lu_, lv_;
  std::vector<cplx> eu_half_, ev_half_, eu_, ev_;
  std::vector<cplx> qu_, qv_, f1u_, f1v_, f2u_, f2v_, f3u_, f3v_;
  CVec u_, v_, w_, w_hat_, tmp_;
};

// one step from a fresh stepper; enforces the stability bound
FieldState step(const FieldState& state, const SolverConfig& cfg);

double zero_curvature_residual(const FieldState& state, const FieldState& state_next, cplx z,
                               LaxA1 variant = LaxA1::derived);

std::vector<ConservationReport> conservation_residual(const std::vector<FieldState>& history);

}  // namespace cgnls
