#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "cgnls/types.hpp"

namespace cgnls::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline cplx random_complex(double re_lo, double re_hi, double im_lo, double im_hi) {
  return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
}

// composite Simpson rule on [a, b] with n (even) panels
template <class F>
auto simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  auto sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * (h / 3.0);
}

// erfc(x) for x >= 0 by its Maclaurin series for erf (adequate for x <= 3)
inline double erfc_series(double x) {
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    sum += term / (2 * n + 1);
  }
  return 1.0 - 2.0 / std::sqrt(M_PI) * sum;
}

}  // namespace cgnls::testing
