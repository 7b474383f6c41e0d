#include <doctest.h>

#include "cgnls/core.hpp"
#include "cgnls/errors.hpp"
#include "oracles.hpp"

using namespace cgnls;
using cgnls::testing::random_complex;
using cgnls::testing::uniform;

TEST_CASE("phase point evaluates -(x/t + alpha)/4") {
  CHECK(phase_point(0.0, 1.0, {}) == 0.0);
  CHECK(phase_point(-4.0, 1.0, {}) == 1.0);
  CHECK(phase_point(4.0, 2.0, {2.0, 0.0, 0.0}) == -1.0);
  CHECK_THROWS_AS(phase_point(1.0, 0.0, {}), DomainError);
  CHECK_THROWS_AS(phase_point(1.0, -2.0, {}), DomainError);
  auto ctx = PhaseContext::make(3.0, 1.5, {0.4, 0.0, 0.0});
  CHECK(ctx.z0 == -(3.0 / 1.5 + 0.4) / 4.0);
}

TEST_CASE("theta identities") {
  EquationParams p{0.3, 0.0, 0.7};
  auto ctx = PhaseContext::make(-1.2, 2.0, p);
  CHECK(std::abs(theta(ctx.z0, ctx) - (-2.0 * ctx.z0 * ctx.z0 - p.gamma / 2.0)) < 1e-14);
  CHECK(std::abs(theta(0.0, PhaseContext::make(0.0, 1.0, {}))) == 0.0);
  for (int i = 0; i < 200; ++i) {
    cplx z = random_complex(-3, 3, -3, 3);
    cplx square_form = 2.0 * (z - ctx.z0) * (z - ctx.z0) - 2.0 * ctx.z0 * ctx.z0 - p.gamma / 2.0;
    CHECK(std::abs(theta(z, ctx) - square_form) < 1e-12 * (1.0 + std::norm(z)));
    double decay = (2.0 * I_unit * theta(z, ctx)).real();
    CHECK(decay == doctest::Approx(-8.0 * (z.real() - ctx.z0) * z.imag()).epsilon(1e-10));
    if (z.imag() > 0 && z.real() > ctx.z0) CHECK(decay < 0.0);
  }
}

TEST_CASE("phase exponent is 2it times theta up to the constant") {
  EquationParams p{0.6, 0.0, -0.4};
  double x = 1.3, t = 2.5;
  auto ctx = PhaseContext::make(x, t, p);
  for (int i = 0; i < 20; ++i) {
    cplx z = random_complex(-2, 2, 0.1, 2);
    // 2it(2z² − 4z0 z − γ/2) = 2i(xz + t(2z² + αz − γ/2))
    cplx expected = 2.0 * I_unit * t * theta(z, ctx);
    CHECK(std::abs(phase_exponent(z, x, t, p.alpha, theta_shift(ThetaConstant::half_gamma, p.gamma)) - expected) <
          1e-12);
  }
  CHECK(theta_shift(ThetaConstant::full_gamma, 0.8) == 0.8);
  CHECK(theta_shift(ThetaConstant::half_gamma, 0.8) == 0.4);
}

TEST_CASE("spectrum partition") {
  SolitonData empty;
  auto p0 = partition_spectrum(empty, 0.0);
  CHECK(p0.minus.empty());
  CHECK(p0.plus.empty());

  SolitonData two{{{cplx(-1, 1), 1.0}, {cplx(1, 1), 1.0}}};
  auto p = partition_spectrum(two, 0.0);
  REQUIRE(p.minus.size() == 1);
  REQUIRE(p.plus.size() == 1);
  CHECK(p.minus[0] == 0);
  CHECK(p.plus[0] == 1);

  auto all = partition_spectrum(two, 1e9);
  CHECK(all.minus.size() == 2);
  CHECK(all.plus.empty());

  CHECK_THROWS_AS(partition_spectrum(two, 1.0), DegeneratePartition);

  SolitonData many;
  for (int k = 0; k < 12; ++k) many.entries.push_back({random_complex(-2, 2, 0.1, 1), 1.0});
  auto q = partition_spectrum(many, 0.123);
  CHECK(q.minus.size() + q.plus.size() == many.size());
  for (auto i : q.minus) CHECK(many.entries[i].z.real() < 0.123);
  for (auto i : q.plus) CHECK(many.entries[i].z.real() > 0.123);
}

TEST_CASE("cone interval and selection") {
  auto i1 = cone_interval({0.0, 1.0, -2.0, 2.0});
  CHECK(i1.lo == -1.0);
  CHECK(i1.hi == 1.0);
  auto i2 = cone_interval({0.0, 1.0, 0.0, 4.0});
  CHECK(i2.lo == -2.0);
  CHECK(i2.hi == 0.0);
  CHECK_THROWS_AS(cone_interval({0.0, 1.0, 2.0, 2.0}), DomainError);
  CHECK_THROWS_AS(cone_interval({1.0, 1.0, 0.0, 2.0}), DomainError);

  SolitonData d{{{cplx(-1.5, 1), 1.0}, {cplx(0.5, 1), 1.0}, {cplx(1.0, 0.3), 1.0}}};
  auto sel = select_in_interval(d, i1);
  REQUIRE(sel.size() == 2);
  CHECK(sel[0] == 1);
  CHECK(sel[1] == 2);
  CHECK(i1.distance(-1.5) == doctest::Approx(0.5));
  CHECK(i1.distance(0.2) == 0.0);
}

TEST_CASE("cone membership matches brute-force parametrization") {
  ConeSpec cone{-1.0, 2.0, -0.5, 1.5};
  for (int i = 0; i < 500; ++i) {
    double x = uniform(-20, 20);
    double t = uniform(0.1, 10);
    // x = x0 + v t for some x0 in [x1, x2], v in [v1, v2] iff the v-range hits [(x − x2)/t, (x − x1)/t]
    bool inside = false;
    for (int k = 0; k <= 2000 && !inside; ++k) {
      double v = cone.v1 + (cone.v2 - cone.v1) * k / 2000.0;
      double x0 = x - v * t;
      inside = x0 >= cone.x1 - 1e-9 && x0 <= cone.x2 + 1e-9;
    }
    double margin = std::min({std::abs(x - cone.x1 - cone.v1 * t), std::abs(x - cone.x2 - cone.v2 * t)});
    if (margin > 0.05 * t) CHECK(in_cone(cone, x, t) == inside);
  }
}

TEST_CASE("domain types validate their invariants") {
  CHECK_THROWS_AS(SpatialGrid(0.0, 1.0, 100), DomainError);
  CHECK_THROWS_AS(SpatialGrid(0.0, 1.0, 4), DomainError);
  CHECK_THROWS_AS(SpatialGrid(1.0, 0.0, 64), DomainError);
  SpatialGrid g(-2.0, 2.0, 64);
  CHECK(g.dx() == doctest::Approx(4.0 / 64));
  CHECK(g.x(64) == doctest::Approx(2.0));

  CHECK_THROWS_AS((SolitonData{{{cplx(0, -1), 1.0}}}.validate()), DomainError);
  CHECK_THROWS_AS((SolitonData{{{cplx(0, 1), 0.0}}}.validate()), DomainError);
  CHECK_THROWS_AS((SolitonData{{{cplx(0, 1), 1.0}, {cplx(0, 1), 2.0}}}.validate()), DegenerateData);

  FieldState s = FieldState::zeros(g, {});
  s.u[3] = cplx(1, 2);
  s.v[3] = cplx(-1, 2);
  CHECK(s.reduction_defect() == 0.0);
  s.u.pop_back();
  CHECK_THROWS_AS(s.check_shape(), DomainError);
  CHECK_FALSE((EquationParams{std::nan(""), 0, 0}.finite()));
}
