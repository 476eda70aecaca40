#pragma once

// Reference values for the tests, computed in 50-digit arithmetic with no
// code shared with the library.

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace ref {

using big = boost::multiprecision::cpp_bin_float_50;
using rational = boost::multiprecision::cpp_rational;

/// gamma_n(a) from sum_{k<N} ln^n(k+a)/(k+a) - ln^{n+1}(N+a)/(n+1) with
/// Euler-Maclaurin corrections through B_40 at N = 60.
inline big gamma_big(int n, big a) {
  const int N = 60;
  big s = 0;
  for (int k = 0; k < N; ++k) {
    const big x = a + k;
    s += pow(log(x), n) / x;
  }
  const big X = a + N;
  const big L = log(X);
  s -= pow(L, n + 1) / (n + 1);
  s += pow(L, n) / X / 2;
  // f^{(d)}(x) = x^{-(d+1)} sum_p c[p] L^p
  std::vector<big> c(n + 1, big(0));
  c[n] = 1;
  big fact = 1;
  for (int d = 1; d < 40; ++d) {
    std::vector<big> next(n + 1, big(0));
    for (int p = 0; p <= n; ++p) {
      if (p > 0) next[p - 1] += c[p] * p;
      next[p] -= c[p] * d;
    }
    c = next;
    fact *= d + 1;
    if (d % 2 == 1) {
      big poly = 0;
      for (int p = n; p >= 0; --p) poly = poly * L + c[p];
      // - B_{d+1}/(d+1)! f^{(d)}(X)
      s -= boost::math::bernoulli_b2n<big>((d + 1) / 2) / fact * poly / pow(X, d + 1);
    }
  }
  return s;
}

inline double gamma(int n, double a = 1.0) { return static_cast<double>(gamma_big(n, big(a))); }

inline double digamma(double a) { return -gamma(0, a); }

/// p_2, p_3, ... as exact rationals from 1/z + 1/ln(1-z) = sum_{m>=1} p_{m+1} z^{m-1}.
inline std::vector<rational> p_exact(int count) {
  // -ln(1-z)/z = A(z) = sum_j z^j/(j+1); B = 1/A; p_{m+1} = -B_m
  std::vector<rational> B(count + 1);
  B[0] = 1;
  for (int m = 1; m <= count; ++m) {
    rational s = 0;
    for (int j = 1; j <= m; ++j) s += rational(1, j + 1) * B[m - j];
    B[m] = -s;
  }
  std::vector<rational> p;
  for (int m = 1; m <= count; ++m) p.push_back(-B[m]);
  return p;  // p[i] = p_{i+2}
}

/// li(y) for 0 < y < 1 from gamma + ln|ln y| + sum_k ln^k(y)/(k k!).
inline double li(double y) {
  const big t = log(big(y));
  big s = boost::math::constants::euler<big>() + log(-t);
  big term = 1;
  for (int k = 1; k < 400; ++k) {
    term *= t / k;
    s += term / k;
  }
  return static_cast<double>(s);
}

}  // namespace ref
