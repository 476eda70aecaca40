#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "reference.hpp"
#include "stieltjes/series.hpp"

using namespace stieltjes;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double eg = std::numbers::egamma;
const double l2 = std::numbers::ln2;

/// J int_{2^{J-1}}^{2^J} g_2(y)/y^2 [1 + (J-1)/2 ln2 - ln y] dy, piece by piece.
double base2_block_by_quadrature(int J) {
  using boost::math::quadrature::gauss_kronrod;
  const double lo = std::ldexp(1.0, J - 1), hi = std::ldexp(1.0, J);
  double s = 0;
  for (double m = lo; m < hi; m += 1) {
    auto h = [J](double y) { return (1 + (J - 1) / 2.0 * l2 - std::log(y)) / (y * y); };
    s += 0.25 * gauss_kronrod<double, 31>::integrate(h, m, m + 0.5, 0, 1e-15);
    s -= 0.25 * gauss_kronrod<double, 31>::integrate(h, m + 0.5, m + 1, 0, 1e-15);
  }
  return J * s;
}
}  // namespace

TEST_CASE("Addison first block and budget") {
  SeriesConfig one;
  one.max_blocks = 1;
  try {
    euler_addison(one, AddisonForm::first);
    FAIL("expected budget_exhausted");
  } catch (const budget_exhausted<EvalResult>& e) {
    CHECK_THAT(e.partial().value, WithinAbs(0.5 + 1.0 / 24, 1e-16));
    CHECK(e.partial().tail_bound > 0);
  }
}

TEST_CASE("Addison both forms") {
  for (AddisonForm form : {AddisonForm::first, AddisonForm::second}) {
    const EvalResult r = euler_addison({1e-10}, form);
    CHECK_THAT(r.value, WithinAbs(ref::gamma(0), 1e-10));
    CHECK(r.blocks_used <= 25);
    CHECK(r.terms_used >= r.blocks_used);
    CHECK(r.trace.size() == static_cast<std::size_t>(r.blocks_used));
  }
}

TEST_CASE("series config validation") {
  CHECK_THROWS_AS(euler_addison({1e-17}), std::domain_error);
  SeriesConfig bad;
  bad.min_blocks = 40;
  CHECK_THROWS_AS(gamma1_base2(bad), std::domain_error);
}

TEST_CASE("min_blocks forces extra blocks") {
  SeriesConfig c;
  c.min_blocks = 22;
  const EvalResult r = euler_addison(c);
  CHECK(r.blocks_used == 22);
}

TEST_CASE("base-2 bracket at j = 1, m = 1") {
  const double want = -0.0 + 4 * std::log(1.5) / 3 - std::log(2.0) / 2;
  CHECK_THAT(gamma1_base2_term(1, 1), WithinAbs(want, 1e-15));
  CHECK_THAT(gamma1_base2_term_unreduced(1, 1), WithinAbs(want, 1e-15));
}

TEST_CASE("base-2 blocks against quadrature") {
  double series = 0, quad = 0;
  for (int J = 1; J <= 3; ++J) {
    series += gamma1_base2_block(J);
    quad += base2_block_by_quadrature(J);
    CHECK_THAT(gamma1_base2_block(J), WithinAbs(base2_block_by_quadrature(J), 1e-13));
  }
  CHECK_THAT(series, WithinAbs(quad, 1e-12));
}

TEST_CASE("gamma_1 in base 2 and base 3") {
  const double g1 = ref::gamma(1);
  const EvalResult b2 = gamma1_base2({1e-8});
  const EvalResult b3 = gamma1_base3({1e-8});
  CHECK_THAT(b2.value, WithinAbs(g1, 1e-8));
  CHECK_THAT(b3.value, WithinAbs(g1, 1e-8));
  CHECK_THAT(b2.value, WithinAbs(b3.value, 2e-8));
  CHECK(std::fabs(b2.value - g1) <= b2.tail_bound);
}

TEST_CASE("base-3 block 1 against quadrature") {
  // 1 * int_1^3 g_3(y)/y^2 [1 - ln y] dy, levels 1/3, 0, -1/3 on thirds
  using boost::math::quadrature::gauss_kronrod;
  auto h = [](double y) { return (1 - std::log(y)) / (y * y); };
  double q = 0;
  for (double m : {1.0, 2.0}) {
    q += gauss_kronrod<double, 31>::integrate(h, m, m + 1.0 / 3, 0, 1e-15) / 3;
    q -= gauss_kronrod<double, 31>::integrate(h, m + 2.0 / 3, m + 1, 0, 1e-15) / 3;
  }
  CHECK_THAT(gamma1_base3_block(1), WithinAbs(q, 1e-12));
}

TEST_CASE("base-k blocks reduce to base 2 and base 3") {
  for (int j = 1; j <= 14; ++j) CHECK_THAT(gamma1_basek_block(2, j), WithinRel(gamma1_base2_block(j), 1e-13));
  for (int j = 1; j <= 8; ++j) CHECK_THAT(gamma1_basek_block(3, j), WithinRel(gamma1_base3_block(j), 1e-13));
}

TEST_CASE("block integral closed form against the level sum") {
  for (int k = 2; k <= 6; ++k)
    for (long long m : {1LL, 2LL, 17LL, 1000LL})
      CHECK_THAT(g_block_integral_closed(k, m), WithinAbs(g_block_integral_levels(k, m), 1e-13));
  CHECK_THROWS_AS(gamma1_basek(1), std::domain_error);
  CHECK_THROWS_AS(gamma1_basek(17), std::domain_error);
}

TEST_CASE("block log integral") {
  CHECK_THAT(block_log_integral(0, 1, 2), WithinAbs(0.5, 1e-16));
  CHECK_THAT(block_log_integral(1, 1, std::exp(1.0)), WithinAbs(1 - 2 / std::exp(1.0), 1e-15));
  using boost::math::quadrature::gauss_kronrod;
  const double q = gauss_kronrod<double, 61>::integrate(
      [](double y) { return std::log(y) * std::log(y) / (y * y); }, 2.0, 3.0, 0, 1e-15);
  CHECK_THAT(block_log_integral(2, 2, 3), WithinAbs(q, 1e-13));
}

TEST_CASE("gamma_n block series") {
  CHECK_THAT(gamma_n_basek(1, 2, {1e-8}).value, WithinAbs(gamma1_base2({1e-8}).value, 1e-12));
  CHECK_THAT(gamma_n_basek(2, 2, {1e-7}).value, WithinAbs(ref::gamma(2), 1e-6));
  CHECK_THAT(gamma_n_basek(3, 2, {1e-7}).value, WithinAbs(ref::gamma(3), 1e-6));
  CHECK_THROWS_AS(gamma_n_basek(5, 2), std::domain_error);
}

TEST_CASE("Hurwitz series for gamma_0(a)") {
  CHECK_THAT(gamma0_hurwitz(1.0).value, WithinAbs(eg, 1e-9));
  CHECK_THAT(gamma0_hurwitz(0.5).value, WithinAbs(eg + 2 * l2, 1e-9));
  CHECK_THAT(gamma0_hurwitz(3.0).value, WithinAbs(eg - 1.5, 1e-9));
  CHECK_THROWS_AS(gamma0_hurwitz(0.0), std::domain_error);
}

TEST_CASE("Hurwitz series for gamma_1(a)") {
  for (double a : {0.5, 1.0, 1.5, 3.0}) {
    const EvalResult r = gamma1_hurwitz(a);
    CHECK_THAT(r.value, WithinAbs(ref::gamma(1, a), r.tail_bound));
  }
}

TEST_CASE("p-constant series for gamma_0(a)") {
  const auto t = p_constants(10000);
  CHECK_THAT(gamma0_pseries(1.5, 1, t).value, WithinAbs(1 / 3.0, 1e-16));
  const EvalResult r = gamma0_pseries(2.0, 10000, t);
  CHECK_THAT(r.value, WithinAbs(l2 - (1 - eg), 5e-6));
  CHECK_THROWS_AS(gamma0_pseries(1.0, 10001, t), std::domain_error);
}

TEST_CASE("p-constant series for gamma_1(a)") {
  const auto t = p_constants(64);
  CHECK_THAT(pseries_inner_binomial(2.5, 1), WithinAbs(std::log(2.5) / 2.5, 1e-16));
  CHECK_THAT(pseries_inner_binomial(1.0, 12), WithinAbs(pseries_inner_quadrature(1.0, 12), 1e-9));
  CHECK_THROWS_AS(gamma1_pseries(1.0, 41, t, PInner::binomial), std::domain_error);
  CHECK_THROWS_AS(pseries_inner_binomial(1.0, 60), cancellation_error);
  const double r30 = gamma1_pseries(1.0, 30, t, PInner::binomial).value;
  CHECK_THAT(r30, WithinAbs(ref::gamma(1), 5e-3));
}
