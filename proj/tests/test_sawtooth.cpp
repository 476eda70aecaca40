#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "stieltjes/sawtooth.hpp"

using namespace stieltjes;
using Catch::Matchers::WithinAbs;

TEST_CASE("fractional part and P1") {
  CHECK(frac(2.25) == 0.25);
  CHECK(frac(-0.25) == 0.75);
  CHECK(frac(-1e-300) < 1.0);
  CHECK(p1(0.0) == -0.5);
  CHECK(f(0.75) == -0.25);
}

TEST_CASE("base-3 levels") {
  const SawtoothBase<double> b(3);
  REQUIRE(b.levels.size() == 3);
  CHECK_THAT(b.levels[0], WithinAbs(1.0 / 3, 1e-16));
  CHECK_THAT(b.levels[1], WithinAbs(0.0, 1e-16));
  CHECK_THAT(b.levels[2], WithinAbs(-1.0 / 3, 1e-16));
  CHECK_THROWS_AS(SawtoothBase<double>(1), std::domain_error);
}

TEST_CASE("levels integrate to zero") {
  for (int k = 2; k <= 16; ++k) {
    const SawtoothBase<double> b(k);
    double s = 0;
    for (double v : b.levels) s += v;
    CHECK_THAT(s, WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("breakpoints take the left-closed level") {
  const SawtoothBase<double> b(4);
  CHECK(g_piecewise(b, 0.25) == b.levels[1]);
  CHECK(g_piecewise(b, 0.0) == b.levels[0]);
  CHECK(g_piecewise(b, 0.9999) == b.levels[3]);
}

TEST_CASE("piecewise and closed forms agree off the breakpoints") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(-50, 50);
  for (int k = 2; k <= 6; ++k) {
    const SawtoothBase<double> b(k);
    for (int i = 0; i < 1000; ++i) {
      const double x = U(rng);
      const double y = frac(x) * k;
      if (std::fabs(y - std::round(y)) < 1e-9) continue;
      CHECK_THAT(g(b, x), WithinAbs(g_piecewise(b, x), 1e-12));
    }
  }
}

TEST_CASE("g_k has period one") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 2; k <= 6; ++k) {
    const SawtoothBase<double> b(k);
    for (int i = 0; i < 1000; ++i) {
      const double x = U(rng);
      CHECK(g_piecewise(b, x) == g_piecewise(b, x + 1));
    }
  }
}

TEST_CASE("telescoping sum approaches f") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 2; k <= 6; ++k) {
    for (int i = 0; i < 1000; ++i) {
      const double x = U(rng);
      for (int N = 0; N <= 12; ++N) {
        const double err = std::fabs(telescoping_partial(k, x, N) - f(x));
        CHECK(err <= 0.5 * std::pow(double(k), -(N + 1)) + 1e-15);
      }
    }
  }
}

TEST_CASE("telescoping at depth stays exact") {
  // x = 1/3 in base 2: {2^n / 3} alternates 1/3, 2/3
  const double s = telescoping_partial(2, 1.0 / 3, 25);
  CHECK_THAT(s, WithinAbs(f(1.0 / 3), 0.5 * std::ldexp(1.0, -26) + 1e-15));
  CHECK_THROWS_AS(telescoping_partial(1, 0.5, 3), std::domain_error);
}
