#pragma once

// Reference values of gamma_n(a) from the limit definition
//   gamma_n(a) = lim_M [ sum_{k=0}^M ln^n(k+a)/(k+a) - ln^{n+1}(M+a)/(n+1) ]
// with Euler-Maclaurin correction at the cut. Shares no code with the
// series and quadrature evaluators.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "stieltjes/errors.hpp"
#include "stieltjes/precision.hpp"
#include "stieltjes/point.hpp"

namespace stieltjes {

struct OracleValue {
  HurwitzPoint point;
  double value;
  double claimed_accuracy;
};

struct OracleOptions {
  /// Number of derivative corrections after the 1/2 f(N+a) term (0..2).
  int em_terms = 2;
  /// If positive, throw accuracy_unreachable when the claimed accuracy is worse.
  double target_accuracy = 0;
};

namespace detail {

/// f(x) = ln^n(x)/x and its derivatives, each held as x^{-q} times a
/// polynomial in L = ln x; d/dx [L^p x^{-q}] = x^{-q-1} (p L^{p-1} - q L^p).
inline std::vector<double> log_over_x_derivative(int n, int order) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 1;
  int q = 1;
  for (int d = 0; d < order; ++d) {
    std::vector<double> next(c.size(), 0.0);
    for (std::size_t p = 0; p < c.size(); ++p) {
      if (c[p] == 0) continue;
      if (p > 0) next[p - 1] += double(p) * c[p];
      next[p] -= double(q) * c[p];
    }
    c = std::move(next);
    ++q;
  }
  return c;
}

inline double eval_log_poly(const std::vector<double>& c, double L, double x, int q) {
  double s = 0;
  for (std::size_t p = c.size(); p-- > 0;) s = s * L + c[p];
  return s * std::pow(x, -q);
}

}  // namespace detail

/// gamma_n(a) from the first N terms of the defining sum, the integral
/// remainder, 1/2 f(N+a), and -f'(N+a)/12 + f'''(N+a)/720.
/// claimed_accuracy is the size of the next correction, |f^(5)|/30240, plus
/// a rounding allowance for the summation.
inline OracleValue stieltjes_oracle(HurwitzPoint point, long long N = 1'000'000, OracleOptions opt = {}) {
  point.validate();
  if (point.n > 4) throw std::domain_error("stieltjes_oracle: n must be <= 4");
  if (N < 1000) throw std::domain_error("stieltjes_oracle: N must be >= 1000");
  if (opt.em_terms < 0 || opt.em_terms > 2) throw std::domain_error("stieltjes_oracle: em_terms must lie in 0..2");
  const int n = point.n;
  const double a = point.a;
  compensated_sum<long double> s;
  long double abs_sum = 0;
  for (long long k = 0; k < N; ++k) {
    const long double x = static_cast<long double>(k) + a;
    const long double L = std::log(x);
    long double t = 1 / x;
    for (int i = 0; i < n; ++i) t *= L;
    s += t;
    abs_sum += std::fabs(t);
  }
  const double X = double(N) + a;
  const double L = std::log(X);
  const long double integral = std::pow(static_cast<long double>(std::log(static_cast<long double>(N) + a)), n + 1) / (n + 1);
  long double value = s.value() - integral;
  value += 0.5L * detail::eval_log_poly(detail::log_over_x_derivative(n, 0), L, X, 1);
  // B_2/2! = 1/12, B_4/4! = -1/720, B_6/6! = 1/30240
  const double coeff[3] = {1.0 / 12, -1.0 / 720, 1.0 / 30240};
  for (int i = 0; i < opt.em_terms; ++i) {
    const int order = 2 * i + 1;
    value -= coeff[i] * detail::eval_log_poly(detail::log_over_x_derivative(n, order), L, X, order + 1);
  }
  const int next = 2 * opt.em_terms + 1;
  const double trunc = std::fabs(coeff[opt.em_terms] * detail::eval_log_poly(detail::log_over_x_derivative(n, next), L, X, next + 1));
  const double rounding =
      4 * static_cast<double>(std::numeric_limits<long double>::epsilon() * (abs_sum + integral)) +
      2 * std::numeric_limits<double>::epsilon() * std::fabs(static_cast<double>(value));
  OracleValue out{point, static_cast<double>(value), trunc + rounding};
  if (opt.target_accuracy > 0 && out.claimed_accuracy > opt.target_accuracy)
    throw accuracy_unreachable("stieltjes_oracle: N = " + std::to_string(N) + " gives accuracy " +
                               std::to_string(out.claimed_accuracy) + ", above the requested " +
                               std::to_string(opt.target_accuracy));
  return out;
}

/// zeta(s,a) for real s != 1 by Euler-Maclaurin after N direct terms.
inline double hurwitz_zeta_em(double s, double a, long long N = 100'000) {
  if (s == 1) throw std::domain_error("hurwitz_zeta_em: pole at s = 1");
  if (!(a > 0)) throw std::domain_error("hurwitz_zeta_em: a must be positive");
  compensated_sum<long double> sum;
  for (long long k = 0; k < N; ++k) sum += std::pow(static_cast<long double>(k) + a, static_cast<long double>(-s));
  const long double X = static_cast<long double>(N) + a;
  long double v = sum.value();
  v += std::pow(X, 1 - static_cast<long double>(s)) / (s - 1);
  v += 0.5L * std::pow(X, static_cast<long double>(-s));
  v += s / 12.0L * std::pow(X, static_cast<long double>(-s - 1));
  v -= s * (s + 1) * (s + 2) / 720.0L * std::pow(X, static_cast<long double>(-s - 3));
  return static_cast<double>(v);
}

/// gamma_1(1/2) from zeta(s,1/2) = (2^s - 1) zeta(s) by multiplying the
/// Laurent expansions about s = 1, with t = s - 1:
///   2^s - 1         = 1 + 2 ln2 t + ln^2(2) t^2 + ...
///   zeta(s)         = 1/t + gamma_0 - gamma_1 t + ...
///   zeta(s, 1/2)    = 1/t + gamma_0(1/2) - gamma_1(1/2) t + ...
/// so -gamma_1(1/2) is the t^1 coefficient of the product.
inline double gamma1_half_reference(long long N = 1'000'000) {
  const double g0 = stieltjes_oracle({0, 1.0}, N).value;
  const double g1 = stieltjes_oracle({1, 1.0}, N).value;
  const double l2 = std::log(2.0);
  const double A[3] = {1.0, 2 * l2, l2 * l2};  // t^0, t^1, t^2
  const double Z[3] = {1.0, g0, -g1};          // t^-1, t^0, t^1
  // t^1 coefficient of A(t) Z(t): pairs (i, j) with i + (j - 1) = 1
  double c1 = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = 2 - i;
    c1 += A[i] * Z[j];
  }
  return -c1;
}

}  // namespace stieltjes
