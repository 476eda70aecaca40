#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "stieltjes.hpp"

using namespace stieltjes;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("digamma duplication and recurrence") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.05, 30);
  for (int i = 0; i < 500; ++i) {
    const double x = U(rng);
    const double dup = 0.5 * digamma(x) + 0.5 * digamma(x + 0.5) + std::numbers::ln2;
    CHECK_THAT(digamma(2 * x), WithinAbs(dup, 1e-13));
    CHECK_THAT(digamma(x + 1), WithinAbs(digamma(x) + 1 / x, 1e-13 * std::max(1.0, 1 / x)));
  }
}

TEST_CASE("p-constants are positive, decreasing and route independent") {
  const auto a = p_constants(30, PRoute::stirling_sum);
  const auto b = p_constants(30, PRoute::pochhammer_integral);
  const auto c = p_constants(30, PRoute::reciprocal_recurrence);
  for (int n = 1; n <= 30; ++n) {
    CHECK(c[n] > 0);
    if (n > 1) CHECK(c[n] < c[n - 1]);
    CHECK_THAT(a[n], WithinRel(c[n], 1e-12));
    CHECK_THAT(b[n], WithinRel(c[n], 1e-12));
  }
}

TEST_CASE("kernel expansion holds at random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(1e-4, 1 - 1e-4);
  for (int i = 0; i < 300; ++i) {
    const double x = U(rng);
    const int n = 2 + i % 6;
    CHECK_THAT(berndt_series(x, n, 80), WithinAbs(1 / std::log(x) + 1 / (1 - x), 1e-12));
  }
}

TEST_CASE("Addison blocks are positive and shrinking") {
  const EvalResult r = euler_addison({1e-12});
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].block_magnitude > 0);
    CHECK(r.trace[i].block_magnitude < r.trace[i - 1].block_magnitude);
    CHECK(r.trace[i].partial_value > r.trace[i - 1].partial_value);
  }
}

TEST_CASE("evaluation results satisfy their invariants") {
  for (const EvalResult& r : {euler_addison(), gamma1_base2({1e-8}), gamma0_hurwitz(0.7), gamma1_hurwitz(2.2)}) {
    CHECK(std::isfinite(r.value));
    CHECK(r.tail_bound >= 0);
    CHECK(r.terms_used >= r.blocks_used);
  }
}

TEST_CASE("gamma_1(1/2) verdict is stable under tighter tolerances") {
  const Verdict loose = corollary1_audit(1.0).verdict;
  const Verdict tight = corollary1_audit(0.1).verdict;
  CHECK(loose == tight);
  CHECK(loose != Verdict::failed);
}

TEST_CASE("Hurwitz series are deterministic") {
  CHECK(gamma1_hurwitz(0.37).value == gamma1_hurwitz(0.37).value);
  CHECK(gamma0_hurwitz(2.9).value == gamma0_hurwitz(2.9).value);
}

TEST_CASE("shift identity across a") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0.2, 4);
  for (int i = 0; i < 6; ++i) {
    const double a = U(rng);
    for (int k : {0, 1}) {
      const AuditReport r = shift_identity(k, a);
      INFO("k=" << k << " a=" << a);
      CHECK(r.verdict == Verdict::confirmed);
    }
  }
}
