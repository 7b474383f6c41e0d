#include <benchmark/benchmark.h>

#include <cmath>

#include "cgnls/asymptotics.hpp"
#include "cgnls/pcmodel.hpp"
#include "cgnls/pde.hpp"
#include "cgnls/scattering.hpp"
#include "cgnls/soliton.hpp"
#include "cgnls/special.hpp"

using namespace cgnls;

namespace {

const EquationParams params{0.3, 0.25, 0.4};
const SolitonData two{{{cplx(-0.2, 0.5), cplx(0.0, -1.0)}, {cplx(0.4, 0.7), cplx(1.5, 0.5)}}};

void pde_step(benchmark::State& bench, Scheme scheme) {
  const auto n = static_cast<std::size_t>(bench.range(0));
  const SpatialGrid grid(-32.0, 32.0, n);
  auto state = make_initial_data(two, grid, params);
  Stepper stepper(grid, params, SolverConfig{1e-4, scheme});
  for (auto _ : bench) {
    stepper.step(state);
    benchmark::DoNotOptimize(state.u.data());
  }
  bench.SetItemsProcessed(bench.iterations() * static_cast<long>(n));
}

void BM_pde_step_if_rk4(benchmark::State& bench) { pde_step(bench, Scheme::if_rk4); }
void BM_pde_step_etdrk4(benchmark::State& bench) { pde_step(bench, Scheme::etdrk4); }

void BM_nsoliton(benchmark::State& bench) {
  SolitonData data;
  for (int k = 0; k < bench.range(0); ++k) data.entries.push_back({cplx(-1.0 + 0.5 * k, 0.4 + 0.1 * k), cplx(1.0, 0.0)});
  double x = -5.0;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(nsoliton(data, x, 1.0, params).u());
    x = x > 5.0 ? -5.0 : x + 0.01;
  }
}

void BM_pcf(benchmark::State& bench) {
  const double r = static_cast<double>(bench.range(0));
  const cplx a(-0.3, 0.7);
  double angle = 0.0;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(pcf(a, std::polar(r, angle)));
    angle += 0.37;
  }
}

void BM_Mpc(benchmark::State& bench) {
  const PCParams p = pc_coefficients(cplx(0.6, -0.3));
  double angle = 0.1;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(Mpc(std::polar(3.0, angle), p));
    angle += 0.41;
  }
}

void BM_s11(benchmark::State& bench) {
  const auto n = static_cast<std::size_t>(bench.range(0));
  const SpatialGrid grid(-40.0, 40.0, n);
  FieldState s = FieldState::zeros(grid, EquationParams{});
  for (std::size_t j = 0; j < n; ++j) {
    s.u[j] = 1.2 / std::cosh(grid.x(j));
    s.v[j] = -std::conj(s.u[j]);
  }
  const ScatteringProblem problem(s);
  double z = -3.0;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(problem.s11(cplx(z, 0.3)));
    z = z > 3.0 ? -3.0 : z + 0.05;
  }
}

void BM_predict(benchmark::State& bench) {
  ScatteringData data;
  data.discrete = two.entries;
  const Predictor predictor(data, params, ConeSpec{-5.0, 5.0, -1.0, 1.0});
  for (auto _ : bench) benchmark::DoNotOptimize(predictor.predict(0.5, 12.0).u_pred);
}

}  // namespace

BENCHMARK(BM_pde_step_if_rk4)->Arg(1024)->Arg(8192);
BENCHMARK(BM_pde_step_etdrk4)->Arg(1024)->Arg(8192);
BENCHMARK(BM_nsoliton)->Arg(1)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_pcf)->Arg(1)->Arg(6)->Arg(20);
BENCHMARK(BM_Mpc);
BENCHMARK(BM_s11)->Arg(1024)->Arg(2048);
BENCHMARK(BM_predict);

BENCHMARK_MAIN();
