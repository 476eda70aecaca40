#pragma once

// Periodized Bernoulli polynomial P1, its negation f, and the base-k
// rectangular functions g_k(x) = f(x) - f(kx)/k.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stieltjes {

/// {x} = x - floor(x), always in [0,1).
template <std::floating_point Real>
Real frac(Real x) {
  Real r = x - std::floor(x);
  // x slightly negative can round up to exactly 1
  if (r >= Real(1)) r = std::nextafter(Real(1), Real(0));
  return r;
}

/// P1(x) = {x} - 1/2.
template <std::floating_point Real>
Real p1(Real x) {
  return frac(x) - Real(0.5);
}

/// f(x) = -P1(x).
template <std::floating_point Real>
Real f(Real x) {
  return -p1(x);
}

/// Base-k rectangular function: on [(j-1)/k, j/k) it takes the level
/// 1/2 (1 - 1/k) - (j-1)/k.
template <std::floating_point Real = double>
struct SawtoothBase {
  int k;
  std::vector<Real> levels;  // levels[j-1] for j = 1..k

  explicit SawtoothBase(int base) : k(base) {
    if (base < 2) throw std::domain_error("SawtoothBase: k must be >= 2, got " + std::to_string(base));
    levels.reserve(static_cast<std::size_t>(k));
    const Real top = Real(k - 1) / Real(2 * k);
    for (int j = 1; j <= k; ++j) levels.push_back(top - Real(j - 1) / Real(k));
  }

  /// Level on the subinterval containing {x}; left-closed, right-open.
  Real level_at(Real x) const {
    const Real y = frac(x);
    auto j = static_cast<int>(std::floor(y * Real(k)));
    if (j >= k) j = k - 1;
    return levels[static_cast<std::size_t>(j)];
  }
};

/// g_k(x) = 1/2 (1 - 1/k) + {kx}/k - {x}.
template <std::floating_point Real>
Real g(const SawtoothBase<Real>& base, Real x) {
  const Real k = Real(base.k);
  return Real(0.5) * (1 - 1 / k) + frac(k * x) / k - frac(x);
}

/// g_k by table lookup of the piecewise levels.
template <std::floating_point Real>
Real g_piecewise(const SawtoothBase<Real>& base, Real x) {
  return base.level_at(x);
}

/// sum_{n=0}^{N} g_k(k^n x)/k^n, which telescopes to f(x) - f(k^{N+1}x)/k^{N+1}.
///
/// {k^n x} is tracked as a 64-bit fixed-point fraction M/2^64 and advanced by
/// M <- k M mod 2^64, so the subinterval index floor(k {k^n x}) is the exact
/// high word of k M at every depth. x is quantised to a multiple of 2^-64.
template <std::floating_point Real = double>
Real telescoping_partial(int k, Real x, int N) {
  if (k < 2) throw std::domain_error("telescoping_partial: k must be >= 2");
  if (N < 0) throw std::domain_error("telescoping_partial: N must be >= 0");
  const SawtoothBase<Real> base(k);
  const long double scaled = std::ldexp(static_cast<long double>(frac(x)), 64);
  std::uint64_t M = scaled >= 18446744073709551615.0L
                        ? ~std::uint64_t{0}
                        : static_cast<std::uint64_t>(scaled);
  Real sum = 0;
  Real weight = 1;
  const auto kk = static_cast<unsigned __int128>(k);
  for (int n = 0; n <= N; ++n) {
    const unsigned __int128 prod = kk * M;
    const auto j = static_cast<std::size_t>(prod >> 64);
    sum += base.levels[j] * weight;
    M = static_cast<std::uint64_t>(prod);
    weight /= Real(k);
  }
  return sum;
}

}  // namespace stieltjes
