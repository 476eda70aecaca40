#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "reference.hpp"
#include "stieltjes/specfun.hpp"

using namespace stieltjes;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("digamma at reference points") {
  const double g = std::numbers::egamma;
  CHECK_THAT(digamma(1.0), WithinAbs(-g, 2e-16));
  CHECK_THAT(digamma(0.5), WithinAbs(-g - 2 * std::log(2.0), 4e-16));
  CHECK_THAT(digamma(3.0), WithinAbs(-g + 1.5, 4e-16));
  for (double x : {0.1, 0.25, 0.75, 2.5, 7.0, 9.99, 10.0, 42.0, 1e3})
    CHECK_THAT(digamma(x), WithinAbs(ref::digamma(x), 4e-15 * std::max(1.0, std::fabs(ref::digamma(x)))));
}

TEST_CASE("digamma rejects non-positive arguments") {
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-1.5), std::domain_error);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == 0.0);
  CHECK(harmonic(1) == 1.0);
  CHECK_THAT(harmonic(4), WithinAbs(25.0 / 12, 1e-15));
  CHECK_THAT(harmonic(100000), WithinAbs(std::log(1e5) + std::numbers::egamma + 0.5e-5, 1e-10));
  CHECK_THROWS_AS(harmonic(-1), std::domain_error);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(1.0, 5) == 120.0);
  CHECK(pochhammer(0.5, 0) == 1.0);
  CHECK_THAT(pochhammer(0.5, 3), WithinAbs(0.5 * 1.5 * 2.5, 1e-15));
  CHECK_THROWS_AS(pochhammer(1.0, 200), std::overflow_error);
}

TEST_CASE("Stirling numbers of the first kind") {
  const auto t = stirling_first(6);
  CHECK(t(4, 1) == -6);
  CHECK(t(4, 2) == 11);
  CHECK(t(4, 3) == -6);
  CHECK(t(4, 4) == 1);
  for (int n = 1; n <= 6; ++n) {
    std::int64_t abs_sum = 0, fact = 1, alt = 0;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int k = 1; k <= n; ++k) {
      abs_sum += std::llabs(t(n, k));
      alt += t(n, k);
    }
    CHECK(abs_sum == fact);
    CHECK(alt == (n == 1 ? 1 : 0));  // falling factorial at x = 1
  }
  CHECK_THROWS_AS(stirling_first<std::int64_t>(25), std::overflow_error);
  CHECK_NOTHROW(stirling_first<__int128>(33));
}

TEST_CASE("p-constants match the exact series coefficients") {
  const auto exact = ref::p_exact(30);
  CHECK(exact[0] == ref::rational(1, 2));
  CHECK(exact[1] == ref::rational(1, 12));
  CHECK(exact[3] == ref::rational(19, 720));
  for (PRoute route : {PRoute::stirling_sum, PRoute::pochhammer_integral, PRoute::reciprocal_recurrence}) {
    INFO(to_string(route));
    const auto t = p_constants(30, route);
    for (int n = 1; n <= 30; ++n) {
      const double want = static_cast<double>(exact[static_cast<std::size_t>(n - 1)]);
      CHECK_THAT(t[n], WithinRel(want, 1e-13));
    }
  }
}

TEST_CASE("p-constants in exact rational arithmetic") {
  const auto t = p_constants<ref::rational>(20);
  const auto exact = ref::p_exact(20);
  for (int n = 1; n <= 20; ++n) CHECK(t[n] == exact[static_cast<std::size_t>(n - 1)]);
}

TEST_CASE("p-constants sum to one and weight to gamma") {
  const auto t = p_constants(20000);
  double s = 0, w = 0;
  for (int n = 1; n <= t.max_index; ++n) {
    s += t[n];
    w += t[n] / n;
  }
  // sum_{n>=1} p_{n+1} = 1 with a tail of order 1/ln N
  CHECK(s < 1);
  CHECK_THAT(s, WithinAbs(1.0, 0.12));
  CHECK_THAT(w, WithinAbs(std::numbers::egamma, 1e-5));
}

TEST_CASE("restricted Gauss series") {
  CHECK(hyp2f1_11(0.7, 0.0).value == 1.0);
  for (double v : {0.1, 0.5, 0.9})
    CHECK_THAT(hyp2f1_11(1.0, v).value, WithinRel(-std::log1p(-v) / v, 1e-13));
  // a = 2: 2F1(1,1;3;v) = 2[(1-v) ln(1-v) + v]/v^2
  for (double v : {0.2, 0.6}) {
    const double want = 2 * ((1 - v) * std::log1p(-v) + v) / (v * v);
    CHECK_THAT(hyp2f1_11(2.0, v).value, WithinRel(want, 1e-13));
  }
  CHECK_THROWS_AS(hyp2f1_11(1.0, 1.0), std::domain_error);
}

TEST_CASE("Gauss series near v = 1 through the complement") {
  for (double a : {0.5, 1.0, 1.5, 2.0, 3.3}) {
    for (double w : {1e-3, 0.05, 0.3}) {
      INFO("a=" << a << " w=" << w);
      long long terms = 0;
      const double series = hyp2f1_11_series(a, 1 - w, terms, 100'000'000);
      CHECK_THAT(hyp2f1_11_complement(a, w), WithinRel(series, 1e-9));
    }
  }
}
