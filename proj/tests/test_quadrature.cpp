#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "reference.hpp"
#include "stieltjes/quadrature.hpp"

using namespace stieltjes;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double eg = std::numbers::egamma;
const double l2 = std::numbers::ln2;
}  // namespace

TEST_CASE("integrate smooth and singular integrands") {
  auto r = integrate([](double x) { return x * x * x; }, 0.0, 2.0, {});
  CHECK_THAT(r.value, WithinAbs(4.0, 1e-13));
  CHECK(r.evaluations > 0);
  r = integrate([](double x) { return std::log(x); }, 0.0, 1.0, {});
  CHECK_THAT(r.value, WithinAbs(-1.0, 1e-10));
  r = integrate([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, {.tol = 1e-8, .left_guard = 1e-24});
  CHECK_THAT(r.value, WithinAbs(2.0, 1e-6));
}

TEST_CASE("quadrature spec validation") {
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, {1e-16}), std::domain_error);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0, {}), std::domain_error);
  QuadratureSpec tight{1e-13};
  tight.max_subdivisions = 3;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(40 * x); }, 0.0, 10.0, tight),
                  tolerance_not_met<QuadResult>);
}

TEST_CASE("kernel closed form and limits") {
  for (int n : {2, 3, 5, 8})
    for (double x : {0.0, 0.1, 0.5, 0.9}) {
      const double direct = n / (1 - std::pow(x, n)) - 1 / (1 - x);
      CHECK_THAT(berndt_kernel(x, n), WithinAbs(direct, 1e-12));
    }
  CHECK_THAT(berndt_kernel(0.5, 2), WithinAbs(2.0 / 3, 1e-15));
  CHECK_THAT(berndt_kernel(1.0, 5), WithinAbs(2.0, 1e-15));
  CHECK_THROWS_AS(berndt_kernel(0.5, 1), std::domain_error);
}

TEST_CASE("kernel expansion of 1/ln x + 1/(1-x)") {
  for (int n : {2, 3, 7})
    for (double x : {1e-6, 0.01, 0.3, 0.5, 0.8, 0.99}) {
      const double lhs = 1 / std::log(x) + 1 / (1 - x);
      CHECK_THAT(berndt_series(x, n, 80), WithinAbs(lhs, 1e-12));
    }
}

TEST_CASE("sum of x^(n^k - 1)") {
  CHECK_THAT(sum_xpow_nk(0.5, 2), WithinAbs(0.5 + std::pow(0.5, 3) + std::pow(0.5, 7) + std::pow(0.5, 15) +
                                                std::pow(0.5, 31) + std::pow(0.5, 63),
                                            1e-17));
  CHECK_THROWS_AS(sum_xpow_nk(1.0, 2), std::domain_error);
}

TEST_CASE("Addison series as an integral") {
  const QuadResult r = addison_integral({1e-11});
  CHECK_THAT(r.value, WithinAbs(ref::gamma(0), 1e-10));
  CHECK(r.abs_error_est < 1e-10);
}

TEST_CASE("moments of (1-x)/(1+x)") {
  CHECK_THAT(addison_moment_closed(1), WithinAbs(1.5 - 2 * l2, 1e-15));
  for (int p : {1, 2, 3, 7})
    CHECK_THAT(addison_moment(p, {1e-13}).value, WithinAbs(addison_moment_closed(p), 1e-12));
}

TEST_CASE("log-log moments") {
  CHECK_THAT(loglog_moment_closed(0), WithinAbs(-eg, 1e-16));
  for (int k = 0; k <= 10; ++k) {
    const QuadResult r = loglog_moment(k);
    CHECK_THAT(r.value, WithinAbs(loglog_moment_closed(k), r.abs_error_est + 1e-12));
  }
}

TEST_CASE("beta log-log moment at n = 1 is the plain moment") {
  for (double a : {0.5, 1.0, 3.0})
    CHECK_THAT(beta_loglog_moment(a, 1).value, WithinAbs(-(eg + std::log(a)) / a, 1e-9));
}

TEST_CASE("kernel integrals for gamma^2 + gamma_1") {
  const double want = eg * eg + ref::gamma(1);
  for (int n : {2, 3, 5}) {
    const QuadResult r = prop4_gamma1(n);
    CHECK_THAT(r.value, WithinAbs(want, r.abs_error_est + 1e-12));
    CHECK_THAT(r.value, WithinAbs(0.2603621, 1e-6));
  }
  CHECK_THROWS_AS(prop4_gamma1(1), std::domain_error);
}

TEST_CASE("kernel integral for ln a - psi(a)") {
  CHECK_THAT(prop4_psi(2.0, 2).value, WithinAbs(l2 - 1 + eg, 1e-10));
  for (double a : {0.3, 1.0, 4.5})
    CHECK_THAT(prop4_psi(a, 3).value, WithinAbs(std::log(a) - ref::digamma(a), 1e-9));
}

TEST_CASE("gamma_1(a) and gamma_2(a) from the kernel integrals") {
  for (double a : {0.5, 1.0, 2.5}) {
    const QuadResult r = prop4_gamma1_hurwitz(a, 2);
    CHECK_THAT(prop4_extract_gamma1(a, r.value), WithinAbs(ref::gamma(1, a), r.abs_error_est + 1e-12));
  }
  const QuadResult r2 = prop4_gamma2_hurwitz(1.0, 2);
  CHECK_THAT(prop4_extract_gamma2(1.0, r2.value, ref::gamma(1)), WithinAbs(ref::gamma(2), 1e-9));
}

TEST_CASE("Gauss-series integral for ln a + gamma_0(a)") {
  for (double a : {0.5, 1.0, 1.5, 2.0}) {
    const double want = std::log(a) + ref::gamma(0, a);
    for (Cor3Form form : {Cor3Form::u_form, Cor3Form::v_form}) {
      INFO("a=" << a << " form=" << to_string(form));
      const QuadResult r = corollary3(a, {}, form);
      CHECK_THAT(r.value, WithinAbs(want, r.abs_error_est + 1e-12));
    }
  }
}

TEST_CASE("logarithmic integral") {
  for (double y : {0.1, 0.5, 0.9}) CHECK_THAT(logarithmic_integral(y).value, WithinAbs(ref::li(y), 1e-10));
}

TEST_CASE("kernel sum with limits y^(1/n^k) gives -ln(1-y) + li(y)") {
  for (int n : {2, 3})
    for (double y : {0.5, 0.7}) {
      const double want = -std::log1p(-y) + ref::li(y);
      const QuadResult r = corollary4(y, n);
      CHECK_THAT(r.value, WithinAbs(want, r.abs_error_est + 1e-12));
    }
}

TEST_CASE("kernel sum with every limit at y depends on n") {
  const double a = corollary4_fixed_limit(0.5, 2).value;
  const double b = corollary4_fixed_limit(0.5, 3).value;
  CHECK(std::fabs(a - b) > 1e-2);
  CHECK(std::fabs(a - corollary4_closed(0.5)) > 0.1);
}
