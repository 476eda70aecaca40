// gamma_1 four ways, and gamma_1(1/2) with its closed form.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "stieltjes.hpp"

using namespace stieltjes;

int main() {
  SeriesConfig cfg;
  cfg.tol = 1e-9;

  const EvalResult b2 = gamma1_base2(cfg);
  const EvalResult b3 = gamma1_base3(cfg);
  const EvalResult hz = gamma1_hurwitz(1.0, cfg);
  const OracleValue lim = stieltjes_oracle({1, 1.0});

  std::printf("%-22s %22s %12s %8s\n", "method", "gamma_1", "tail bound", "blocks");
  std::printf("%-22s %22.17f %12.3g %8lld\n", "base 2", b2.value, b2.tail_bound, b2.blocks_used);
  std::printf("%-22s %22.17f %12.3g %8lld\n", "base 3", b3.value, b3.tail_bound, b3.blocks_used);
  std::printf("%-22s %22.17f %12.3g %8lld\n", "Hurwitz double series", hz.value, hz.tail_bound, hz.blocks_used);
  std::printf("%-22s %22.17f %12.3g %8s\n", "limit definition", lim.value, lim.claimed_accuracy, "-");

  // gamma_1 from the kernel integral for gamma^2 + gamma_1
  const QuadResult k = prop4_gamma1(3);
  const double g = euler_gamma<double>;
  std::printf("%-22s %22.17f %12.3g\n", "kernel integral, n=3", k.value - g * g, k.abs_error_est);

  const double l2 = std::numbers::ln2;
  const double half = gamma1_hurwitz(0.5, cfg).value;
  std::printf("\ngamma_1(1/2)              = %.15f\n", half);
  std::printf("gamma_1 - 2 gamma ln2 - ln^2 2 = %.15f\n", lim.value - 2 * g * l2 - l2 * l2);

  // convergence of Addison's series for gamma, block by block
  const EvalResult add = euler_addison({1e-12});
  std::printf("\nAddison series for gamma\n");
  for (const auto& b : add.trace)
    std::printf("  block %2lld  %.17f  %.3g\n", b.block, b.partial_value, b.block_magnitude);
}
