#pragma once

// Special-function kernels shared by every representation: digamma,
// harmonic numbers, the rising factorial, signed Stirling numbers of the
// first kind, the p-constants (unsigned Gregory coefficients) and the
// restricted Gauss series 2F1(1,1;1+a;v).

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "stieltjes/errors.hpp"
#include "stieltjes/precision.hpp"

namespace stieltjes {

template <class Real>
inline constexpr Real euler_gamma = std::numbers::egamma_v<Real>;

/// psi(x) = Gamma'(x)/Gamma(x) for x > 0.
///
/// Upward recurrence psi(x) = psi(x+1) - 1/x until x >= 10, then the
/// asymptotic series through the B14 term. float and double arguments are
/// carried in long double.
template <std::floating_point Real>
Real digamma(Real x) {
  if constexpr (sizeof(Real) < sizeof(long double)) {
    return static_cast<Real>(digamma(static_cast<long double>(x)));
  }
  using std::log;
  if (!(x > 0)) throw std::domain_error("digamma: argument must be positive");
  Real shift = 0;
  while (x < 10) {
    shift += 1 / x;
    x += 1;
  }
  const Real z = 1 / (x * x);
  // B_{2k} / (2k) for k = 1..7
  const Real tail =
      z * (Real(1) / 12 +
           z * (Real(-1) / 120 +
                z * (Real(1) / 252 +
                     z * (Real(-1) / 240 +
                          z * (Real(1) / 132 +
                               z * (Real(-691) / 32760 + z * (Real(1) / 12)))))));
  return log(x) - Real(0.5) / x - tail - shift;
}

/// H_n = sum_{p=1}^n 1/p, summed from the small end. H_0 = 0.
template <std::floating_point Real = double>
Real harmonic(std::int64_t n) {
  if (n < 0) throw std::domain_error("harmonic: n must be non-negative");
  Real s = 0;
  for (std::int64_t p = n; p >= 1; --p) s += Real(1) / Real(p);
  return s;
}

/// Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1.
template <class Real>
Real pochhammer(Real a, std::int64_t n) {
  if (n < 0) throw std::domain_error("pochhammer: n must be non-negative");
  Real r = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    r *= a + Real(i);
    if constexpr (std::is_floating_point_v<Real>) {
      if (!std::isfinite(r))
        throw std::overflow_error("pochhammer: product overflows at factor " +
                                  std::to_string(i + 1));
    }
  }
  return r;
}

/// Signed Stirling numbers of the first kind s(n, k), 1 <= k <= n <= rows,
/// from s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k). Row n expands the falling
/// factorial x(x-1)...(x-n+1) = sum_k s(n,k) x^k.
template <class Int = std::int64_t>
class StirlingTable {
 public:
  explicit StirlingTable(int rows) : rows_(rows) {
    if (rows < 1) throw std::domain_error("stirling_first: rows must be >= 1");
    data_.resize(static_cast<std::size_t>(rows));
    data_[0] = {Int(1)};
    for (int n = 2; n <= rows; ++n) {
      const auto& prev = data_[static_cast<std::size_t>(n - 2)];
      std::vector<Int> row(static_cast<std::size_t>(n), Int(0));
      for (int k = 1; k <= n; ++k) {
        Int left = k >= 2 ? prev[static_cast<std::size_t>(k - 2)] : Int(0);
        Int right = k <= n - 1 ? prev[static_cast<std::size_t>(k - 1)] : Int(0);
        Int scaled{};
        Int value{};
        if (__builtin_mul_overflow(right, Int(n - 1), &scaled) ||
            __builtin_sub_overflow(left, scaled, &value))
          throw std::overflow_error("stirling_first: s(" + std::to_string(n) + "," +
                                    std::to_string(k) +
                                    ") exceeds the exact integer range");
        row[static_cast<std::size_t>(k - 1)] = value;
      }
      data_[static_cast<std::size_t>(n - 1)] = std::move(row);
    }
  }

  int rows() const { return rows_; }
  /// s(n, k) for 1 <= k <= n <= rows.
  Int operator()(int n, int k) const {
    return data_.at(static_cast<std::size_t>(n - 1)).at(static_cast<std::size_t>(k - 1));
  }
  const std::vector<Int>& row(int n) const { return data_.at(static_cast<std::size_t>(n - 1)); }

 private:
  int rows_;
  std::vector<std::vector<Int>> data_;
};

template <class Int = std::int64_t>
StirlingTable<Int> stirling_first(int rows) {
  return StirlingTable<Int>(rows);
}

enum class PRoute { stirling_sum, pochhammer_integral, reciprocal_recurrence };

inline const char* to_string(PRoute r) {
  switch (r) {
    case PRoute::stirling_sum: return "stirling_sum";
    case PRoute::pochhammer_integral: return "pochhammer_integral";
    case PRoute::reciprocal_recurrence: return "reciprocal_recurrence";
  }
  return "?";
}

/// p_2, p_3, ..., p_{max_index+1}: the coefficients of
/// 1/z + 1/ln(1-z) = sum_{n>=1} p_{n+1} z^{n-1}. Immutable after construction.
template <class Real = double>
struct PTable {
  int max_index = 0;
  std::vector<Real> values;  // values[n-1] = p_{n+1}
  PRoute route = PRoute::reciprocal_recurrence;

  /// p_{n+1}, 1 <= n <= max_index.
  const Real& operator[](int n) const { return values[static_cast<std::size_t>(n - 1)]; }
};

namespace detail {

template <class Real>
using accumulate_t = std::conditional_t<std::is_floating_point_v<Real>, long double, Real>;

template <class Real>
Real from_int128(__int128 v) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<Real>(v);
  } else {
    const bool neg = v < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                : static_cast<unsigned __int128>(v);
    const auto hi = static_cast<unsigned long long>(mag >> 64);
    const auto lo = static_cast<unsigned long long>(mag);
    Real two32(4294967296ULL);
    Real r = Real(hi) * two32 * two32 + Real(lo);
    return neg ? Real(-r) : r;
  }
}

}  // namespace detail

/// Builds the p-constant table by one of three independent routes.
///
/// reciprocal_recurrence: invert sum_m z^m/(m+1) as a power series, b_0 = 1,
///   b_n = -sum_{i=1}^n b_{n-i}/(i+1); then p_{n+1} = -b_n. O(N^2).
/// pochhammer_integral: expand -(-x)_n/n! into monomials and integrate over
///   [0,1] exactly.
/// stirling_sum: p_{n+1} = (-1)^{n+1}/n! sum_{k=1}^n s(n,k)/(k+1) with exact
///   Stirling numbers; refuses tables beyond the 128-bit exact range.
template <class Real = double>
PTable<Real> p_constants(int max_index, PRoute route = PRoute::reciprocal_recurrence) {
  using Acc = detail::accumulate_t<Real>;
  if (max_index < 1) throw std::domain_error("p_constants: max_index must be >= 1");
  PTable<Real> table;
  table.max_index = max_index;
  table.route = route;
  table.values.reserve(static_cast<std::size_t>(max_index));

  switch (route) {
    case PRoute::reciprocal_recurrence: {
      std::vector<Acc> a(static_cast<std::size_t>(max_index) + 1);
      for (int i = 0; i <= max_index; ++i) a[static_cast<std::size_t>(i)] = Acc(1) / Acc(i + 1);
      std::vector<Acc> b(static_cast<std::size_t>(max_index) + 1);
      b[0] = Acc(1);
      for (int n = 1; n <= max_index; ++n) {
        Acc s(0);
        for (int i = 1; i <= n; ++i)
          s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
        b[static_cast<std::size_t>(n)] = -s;
        table.values.push_back(Real(-b[static_cast<std::size_t>(n)]));
      }
      break;
    }
    case PRoute::pochhammer_integral: {
      // coeff[i] holds the x^i coefficient of (-x)_n / n!
      std::vector<Acc> coeff{Acc(1)};
      for (int n = 1; n <= max_index; ++n) {
        const Acc j(n - 1);
        const Acc inv(Acc(1) / Acc(n));
        std::vector<Acc> next(coeff.size() + 1, Acc(0));
        for (std::size_t i = 0; i < coeff.size(); ++i) {
          next[i] += coeff[i] * j * inv;
          next[i + 1] -= coeff[i] * inv;
        }
        coeff = std::move(next);
        Acc integral(0);
        for (std::size_t i = 0; i < coeff.size(); ++i)
          integral += coeff[i] / Acc(static_cast<long long>(i) + 1);
        table.values.push_back(Real(-integral));
      }
      break;
    }
    case PRoute::stirling_sum: {
      StirlingTable<__int128> s = [&] {
        try {
          return StirlingTable<__int128>(max_index);
        } catch (const std::overflow_error& e) {
          throw std::overflow_error(std::string("p_constants(stirling_sum): ") + e.what());
        }
      }();
      Acc factorial(1);
      for (int n = 1; n <= max_index; ++n) {
        factorial *= Acc(n);
        Acc sum(0);
        for (int k = 1; k <= n; ++k)
          sum += detail::from_int128<Acc>(s(n, k)) / Acc(k + 1);
        Acc p = sum / factorial;
        if (n % 2 == 0) p = -p;  // (-1)^{n+1}
        table.values.push_back(Real(p));
      }
      break;
    }
  }
  return table;
}

struct HypResult {
  double value;
  long long terms;
};

/// 2F1(1,1;1+a;v) = sum_k k!/(1+a)_k v^k by direct summation, stopping once a
/// term drops below epsilon times the partial sum.
template <class Real = double>
Real hyp2f1_11_series(Real a, Real v, long long& terms, long long cap = 10'000'000) {
  if (!(a > 0)) throw std::domain_error("hyp2f1_11: a must be positive");
  if (!(v >= 0 && v < 1)) throw std::domain_error("hyp2f1_11: v must lie in [0,1)");
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real sum = 1;
  Real term = 1;
  long long k = 0;
  while (true) {
    term *= Real(k + 1) / (a + Real(k + 1)) * v;
    ++k;
    sum += term;
    if (term <= eps * sum) break;
    if (k >= cap)
      throw convergence_failure("hyp2f1_11: no convergence after " + std::to_string(cap) +
                                " terms (v too close to 1 for a = " + std::to_string(a) + ")");
  }
  terms = k + 1;
  return sum;
}

inline HypResult hyp2f1_11(double a, double v, long long cap = 10'000'000) {
  HypResult r{};
  r.value = hyp2f1_11_series(a, v, r.terms, cap);
  return r;
}

/// 2F1(1,1;1+a;v) for v near 1, given w = 1 - v exactly.
///
/// Integer a = m uses the closed form from expanding (1-s)^{m-1} about
/// 1 - vs. Non-integer a uses the 1-v connection formula
///   a/(a-1) 2F1(1,1;2-a;w) + pi a / sin(pi a) w^{a-1} v^{-a}.
/// Large a, or a within 1e-6 of an integer, falls back to the direct series.
template <class Real = double>
Real hyp2f1_11_complement(Real a, Real w) {
  using std::log;
  using std::pow;
  if (!(a > 0)) throw std::domain_error("hyp2f1_11: a must be positive");
  if (!(w > 0 && w <= 1)) throw std::domain_error("hyp2f1_11: 1 - v must lie in (0,1]");
  const Real v = 1 - w;
  long long terms = 0;
  if (v <= Real(0.5) || a > 12) return hyp2f1_11_series(a, v, terms);

  const Real rounded = std::round(a);
  if (a == rounded) {
    const int m = static_cast<int>(rounded);
    // m v^{-m} [ sum_{j<m-1} C(m-1,j)(-w)^j (1 - w^{m-1-j})/(m-1-j) + (-w)^{m-1}(-ln w) ]
    Real s = 0;
    Real binom = 1;
    Real mw_pow = 1;  // (-w)^j
    for (int j = 0; j <= m - 2; ++j) {
      const int q = m - 1 - j;
      s += binom * mw_pow * (1 - pow(w, Real(q))) / Real(q);
      binom = binom * Real(m - 1 - j) / Real(j + 1);
      mw_pow *= -w;
    }
    s += mw_pow * (-log(w));
    return Real(m) * pow(v, Real(-m)) * s;
  }
  if (std::fabs(a - rounded) < Real(1e-6)) return hyp2f1_11_series(a, v, terms);

  // 2F1(1,1;2-a;w)
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real sum = 1;
  Real term = 1;
  for (int k = 0; k < 100000; ++k) {
    term *= Real(k + 1) / (2 - a + Real(k)) * w;
    sum += term;
    if (std::fabs(term) <= eps * std::fabs(sum)) break;
  }
  const Real pi = std::numbers::pi_v<Real>;
  return a / (a - 1) * sum + pi * a / std::sin(pi * a) * pow(w, a - 1) * pow(v, -a);
}

}  // namespace stieltjes
