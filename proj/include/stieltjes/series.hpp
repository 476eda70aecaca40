#pragma once

// Summation representations: Addison's series for gamma, the base-k block
// series for gamma_1 and gamma_n, the Hurwitz double series for gamma_0(a)
// and gamma_1(a), and the p-constant series.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stieltjes/errors.hpp"
#include "stieltjes/point.hpp"
#include "stieltjes/precision.hpp"
#include "stieltjes/quadrature.hpp"
#include "stieltjes/sawtooth.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes {

struct BlockRecord {
  long long block;
  double partial_value;
  double block_magnitude;
};

struct EvalResult {
  double value = 0;
  double tail_bound = 0;
  long long blocks_used = 0;
  long long terms_used = 0;
  std::chrono::nanoseconds elapsed{0};
  std::vector<BlockRecord> trace;

  double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

struct SeriesConfig {
  double tol = 1e-10;
  int max_blocks = 30;
  long long max_terms_per_block = 1LL << 24;
  bool compensated = true;
  /// Keep going to at least this many blocks even after tol is met.
  int min_blocks = 0;

  void validate() const {
    if (!(tol >= 10 * std::numeric_limits<double>::epsilon()))
      throw std::domain_error("SeriesConfig: tol must be at least 10 * epsilon");
    if (max_blocks < 1) throw std::domain_error("SeriesConfig: max_blocks must be >= 1");
    if (max_terms_per_block < 1) throw std::domain_error("SeriesConfig: max_terms_per_block must be >= 1");
    if (min_blocks > max_blocks) throw std::domain_error("SeriesConfig: min_blocks exceeds max_blocks");
  }
};

namespace detail {

using clock = std::chrono::steady_clock;

struct BlockValue {
  extended_real contribution;
  double magnitude;  // what the stopping rule looks at
  long long terms;
};

/// Drives a block series value = base + sign * (sum_j contribution_j + tail(J)).
/// Stops at the first block with magnitude below tol/2; blocks shrink at
/// least geometrically with ratio 1/2, so 2 x last covers the remainder.
template <class Count, class Block, class Tail>
EvalResult run_blocks(const SeriesConfig& cfg, const std::string& name, double base, double sign, Count&& count,
                      Block&& block, Tail&& tail) {
  cfg.validate();
  const auto start = clock::now();
  EvalResult r;
  compensated_sum<extended_real> sum(cfg.compensated);
  int small = 0;
  double last = 0;
  for (int j = 1; j <= cfg.max_blocks; ++j) {
    const long long n = count(j);
    if (n > cfg.max_terms_per_block) {
      r.elapsed = clock::now() - start;
      r.tail_bound = 2 * last;
      throw budget_exhausted<EvalResult>(name + ": block " + std::to_string(j) + " needs " + std::to_string(n) +
                                             " terms, above max_terms_per_block",
                                         r);
    }
    const BlockValue b = block(j);
    sum += b.contribution;
    r.blocks_used = j;
    r.terms_used += b.terms;
    last = b.magnitude;
    r.value = base + sign * static_cast<double>(sum.value() + extended_real(tail(j)));
    r.trace.push_back({j, r.value, b.magnitude});
    small = b.magnitude < cfg.tol / 2 ? small + 1 : 0;
    if (small >= 1 && j >= cfg.min_blocks) {
      r.tail_bound = 2 * last;
      r.elapsed = clock::now() - start;
      return r;
    }
  }
  r.tail_bound = 2 * last;
  r.elapsed = clock::now() - start;
  throw budget_exhausted<EvalResult>(name + ": tolerance not reached within " + std::to_string(cfg.max_blocks) +
                                         " blocks",
                                     r);
}

inline long long ipow(long long k, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= k;
  return r;
}

inline double none(int) { return 0.0; }

}  // namespace detail

enum class AddisonForm { first, second };

inline const char* to_string(AddisonForm f) { return f == AddisonForm::first ? "first" : "second"; }

/// gamma by Addison's series.
///
/// first:  1/2 + 1/2 sum_n n sum_{m=2^{n-1}}^{2^n-1} 1/(2m(m+1)(2m+1))
/// second: 1 - 1/2 sum_n n sum_{m=2^{n-1}+1}^{2^n} 1/(m(2m-1))
///
/// The second form's blocks c_n approach n 2^-n / 4, so it only converges at
/// rate 1/2. With `accelerate` the exact sum of that leading part over all
/// n > N, (N+2) 2^-N / 4, is added and the stopping rule looks at the
/// residual blocks c_n - n 2^-n / 4, which fall off at rate 1/4.
inline EvalResult euler_addison(const SeriesConfig& cfg = {}, AddisonForm form = AddisonForm::first,
                                bool accelerate = true) {
  auto count = [](int n) { return detail::ipow(2, n - 1); };
  if (form == AddisonForm::first) {
    return detail::run_blocks(
        cfg, "euler_addison(first)", 0.5, 0.5, count,
        [&](int n) {
          compensated_sum<extended_real> s(cfg.compensated);
          const long long lo = detail::ipow(2, n - 1);
          for (long long m = lo; m < 2 * lo; ++m) {
            const extended_real x = m;
            s += 1 / (2 * x * (x + 1) * (2 * x + 1));
          }
          const extended_real c = extended_real(n) * s.value();
          return detail::BlockValue{c, static_cast<double>(c) / 2, lo};
        },
        detail::none);
  }
  auto lead = [](int n) { return std::ldexp(double(n), -n) / 4; };
  return detail::run_blocks(
      cfg, "euler_addison(second)", 1.0, -1.0, count,
      [&](int n) {
        compensated_sum<extended_real> s(cfg.compensated);
        const long long lo = detail::ipow(2, n - 1);
        for (long long m = lo + 1; m <= 2 * lo; ++m) {
          const extended_real x = m;
          s += 1 / (x * (2 * x - 1));
        }
        const extended_real c = extended_real(n) * s.value() / 2;
        const double mag = accelerate ? static_cast<double>(c - extended_real(lead(n))) : static_cast<double>(c);
        return detail::BlockValue{c, std::fabs(mag), lo};
      },
      [&](int N) { return accelerate ? std::ldexp(double(N + 2), -N) / 4 : 0.0; });
}

// ---------------------------------------------------------------------------
// gamma_1 in base 2, 3 and k

namespace detail {

// Logarithms feeding the block terms come from long double. The closed
// forms are arranged so that ln m enters only through differences that are
// already small, and ln(1 + i/(km)) only through arguments of size 1/m, so
// 64-bit logs keep the blocks accurate to ~1e-19 m relative while the
// cancelling arithmetic runs in extended_real.
inline extended_real xlogm(long long m) { return extended_real(std::log(static_cast<long double>(m))); }
inline extended_real xlog1p_small(extended_real z) {
  return extended_real(std::log1p(static_cast<long double>(z)));
}

}  // namespace detail

/// Per-m bracket of the base-2 series for -gamma_1 (block weight j/4):
///   (j-1)/2 ln2/(m(m+1)(2m+1)) - ln m/m + 4 ln(m+1/2)/(2m+1) - ln(m+1)/(m+1),
/// arranged as [(j-1)/2 ln2 - ln m]/(m(m+1)(2m+1)) plus log1p differences.
inline extended_real gamma1_base2_term_x(int j, long long m) {
  using detail::xlog1p_small;
  const extended_real x = m;
  const extended_real l2 = detail::ln2<extended_real>();
  const extended_real c = extended_real(j - 1) / 2 * l2;
  return (c - detail::xlogm(m)) / (x * (x + 1) * (2 * x + 1)) +
         2 * xlog1p_small(1 / (2 * x)) / (x + extended_real(0.5)) - xlog1p_small(1 / x) / (x + 1);
}

inline double gamma1_base2_term(int j, long long m) { return static_cast<double>(gamma1_base2_term_x(j, m)); }

/// The same bracket before partial fractions:
///   (1 + (j-1)/2 ln2)/(m(m+1)(2m+1)) - (1+ln m)/m + 4(1+ln(m+1/2))/(2m+1) - (1+ln(m+1))/(m+1).
inline double gamma1_base2_term_unreduced(int j, long long m) {
  using detail::xlog;
  const extended_real x = m;
  const extended_real h = x + extended_real(0.5);
  const extended_real c = 1 + extended_real(j - 1) / 2 * detail::ln2<extended_real>();
  return static_cast<double>(c / (x * (x + 1) * (2 * x + 1)) - (1 + xlog(x)) / x + 4 * (1 + xlog(h)) / (2 * x + 1) -
                             (1 + xlog(x + 1)) / (x + 1));
}

/// The bracket with coefficient 1 on ln(m+1/2)/(2m+1), as it appears in one
/// typeset version of the series. Kept only for the typography audit.
inline double gamma1_base2_term_as_printed(int j, long long m) {
  using detail::xlog;
  const extended_real x = m;
  const extended_real c = extended_real(j - 1) / 2 * detail::ln2<extended_real>();
  return static_cast<double>(c / (x * (x + 1) * (2 * x + 1)) - xlog(x) / x +
                             xlog(x + extended_real(0.5)) / (2 * x + 1) - xlog(x + 1) / (x + 1));
}

/// Block j of the base-2 series for -gamma_1: (j/4) sum_{m=2^{j-1}}^{2^j-1} bracket.
inline extended_real gamma1_base2_block_x(int j, bool compensated = true) {
  compensated_sum<extended_real> s(compensated);
  const long long lo = detail::ipow(2, j - 1);
  for (long long m = lo; m < 2 * lo; ++m) s += gamma1_base2_term_x(j, m);
  return extended_real(j) / 4 * s.value();
}

inline double gamma1_base2_block(int j) { return static_cast<double>(gamma1_base2_block_x(j)); }

inline EvalResult gamma1_base2(const SeriesConfig& cfg = {}) {
  return detail::run_blocks(
      cfg, "gamma1_base2", 0.0, -1.0, [](int j) { return detail::ipow(2, j - 1); },
      [&](int j) {
        const extended_real b = gamma1_base2_block_x(j, cfg.compensated);
        return detail::BlockValue{b, std::fabs(static_cast<double>(b)), detail::ipow(2, j - 1)};
      },
      detail::none);
}

/// Per-m bracket of the base-3 series for -gamma_1 (block weight j/3):
///   (j-1) ln3/2 [1/(m(3m+1)) - 1/((m+1)(3m+2))]
///   - ln m/m + 3 ln(m+1/3)/(3m+1) + 3 ln(m+2/3)/(3m+2) - ln(m+1)/(m+1).
inline extended_real gamma1_base3_term_x(int j, long long m) {
  using detail::xlog1p_small;
  const extended_real x = m;
  const extended_real c = extended_real(j - 1) * detail::xlog(extended_real(3)) / 2;
  const extended_real lm = detail::xlogm(m);
  const extended_real p1 = 3 * x + 1, p2 = 3 * x + 2;
  const extended_real lead = 1 / (x * p1) - 1 / ((x + 1) * p2);
  // -1/m + 3/(3m+1) + 3/(3m+2) - 1/(m+1)
  const extended_real coef = -2 * (2 * x + 1) / (x * (x + 1) * p1 * p2);
  return c * lead + lm * coef + 3 * xlog1p_small(1 / (3 * x)) / p1 + 3 * xlog1p_small(2 / (3 * x)) / p2 -
         xlog1p_small(1 / x) / (x + 1);
}

inline extended_real gamma1_base3_block_x(int j, bool compensated = true) {
  compensated_sum<extended_real> s(compensated);
  const long long lo = detail::ipow(3, j - 1);
  for (long long m = lo; m < 3 * lo; ++m) s += gamma1_base3_term_x(j, m);
  return extended_real(j) / 3 * s.value();
}

inline double gamma1_base3_block(int j) { return static_cast<double>(gamma1_base3_block_x(j)); }

inline EvalResult gamma1_base3(const SeriesConfig& cfg = {}) {
  return detail::run_blocks(
      cfg, "gamma1_base3", 0.0, -1.0, [](int j) { return 2 * detail::ipow(3, j - 1); },
      [&](int j) {
        const extended_real b = gamma1_base3_block_x(j, cfg.compensated);
        return detail::BlockValue{b, std::fabs(static_cast<double>(b)), 2 * detail::ipow(3, j - 1)};
      },
      detail::none);
}

/// int_m^{m+1} g_k(y)/y^2 dy as the level sum sum_l L_l k/((km+l)(km+l-1)).
inline double g_block_integral_levels(int k, long long m) {
  const SawtoothBase<double> base(k);
  double s = 0;
  for (int l = 1; l <= k; ++l) {
    const double km = double(k) * double(m);
    s += base.levels[static_cast<std::size_t>(l - 1)] * k / ((km + l) * (km + l - 1));
  }
  return s;
}

/// The same integral as (2km+k+1)/(2km(m+1)) + psi(km) - psi(km+k).
inline double g_block_integral_closed(int k, long long m) {
  const double km = double(k) * double(m);
  return (2 * km + k + 1) / (2 * km * double(m + 1)) + digamma(km) - digamma(km + k);
}

/// int_m^{m+1} g_k(y) ln y/y^2 dy = sum_l L_l [h(m+(l-1)/k) - h(m+l/k)],
/// h(x) = (1 + ln x)/x. With as_printed the level terms are divided by k,
/// which is the form with (km+l) denominators and no leading factor k.
inline double g_block_log_integral(int k, long long m, bool as_printed = false) {
  const SawtoothBase<double> base(k);
  auto h = [&](int i) {
    const extended_real x = (extended_real(k) * extended_real(m) + extended_real(i)) / extended_real(k);
    return (1 + detail::xlog(x)) / x;
  };
  extended_real s = 0;
  for (int l = 1; l <= k; ++l) s += extended_real(base.levels[static_cast<std::size_t>(l - 1)]) * (h(l - 1) - h(l));
  if (as_printed) s /= extended_real(k);
  return static_cast<double>(s);
}

/// Per-m term of the base-k series for -gamma_1 (block weight j):
///   [(2km+k+1)/(2km(m+1)) - sum_{p<k} 1/(km+p)] (1 + (j-1)/2 ln k)
///   - k sum_l L_l [(1+ln(m+(l-1)/k))/(km+l-1) - (1+ln(m+l/k))/(km+l)].
inline extended_real gamma1_basek_term_x(int k, int j, long long m) {
  const extended_real K = k;
  const extended_real km = K * extended_real(m);
  const extended_real x = m;
  extended_real harm = 0;
  for (int p = k - 1; p >= 0; --p) harm += 1 / (km + extended_real(p));
  const extended_real first = (2 * km + K + 1) / (2 * km * (x + 1)) - harm;
  const extended_real lm = detail::xlogm(m);
  // h(x_i) = (1 + ln x_i)/x_i with x_i = m + i/k
  extended_real h[17];
  for (int i = 0; i <= k; ++i) {
    const extended_real xi = (km + extended_real(i)) / K;
    h[i] = (1 + lm + detail::xlog1p_small(extended_real(i) / km)) / xi;
  }
  extended_real second = 0;
  const extended_real top = (K - 1) / (2 * K);
  for (int l = 1; l <= k; ++l) {
    const extended_real level = top - extended_real(l - 1) / K;
    second += level * (h[l - 1] - h[l]);
  }
  return first * (1 + extended_real(j - 1) / 2 * detail::xlog(K)) - second;
}

inline extended_real gamma1_basek_block_x(int k, int j, bool compensated = true) {
  compensated_sum<extended_real> s(compensated);
  const long long lo = detail::ipow(k, j - 1);
  for (long long m = lo; m < k * lo; ++m) s += gamma1_basek_term_x(k, j, m);
  return extended_real(j) * s.value();
}

inline double gamma1_basek_block(int k, int j) { return static_cast<double>(gamma1_basek_block_x(k, j)); }

inline EvalResult gamma1_basek(int k, const SeriesConfig& cfg = {}) {
  if (k < 2 || k > 16) throw std::domain_error("gamma1_basek: k must lie in 2..16");
  return detail::run_blocks(
      cfg, "gamma1_basek", 0.0, -1.0, [k](int j) { return (k - 1) * detail::ipow(k, j - 1); },
      [&](int j) {
        const extended_real b = gamma1_basek_block_x(k, j, cfg.compensated);
        return detail::BlockValue{b, std::fabs(static_cast<double>(b)), (k - 1) * detail::ipow(k, j - 1)};
      },
      detail::none);
}

// ---------------------------------------------------------------------------
// gamma_n in base k

namespace detail {

/// Antiderivative of ln^p(y)/y^2: -(1/y) sum_{i=0}^p (p!/i!) ln^i y.
template <class T>
T log_power_antiderivative(int p, T y, T lny) {
  // Horner in ln y; the coefficient of L^i is p!/i!
  T s = 1;
  T c = 1;
  for (int i = p - 1; i >= 0; --i) {
    c *= T(i + 1);
    s = s * lny + c;
  }
  return -s / y;
}

}  // namespace detail

/// int_u^v ln^p(y)/y^2 dy in closed form.
inline double block_log_integral(int p, double u, double v) {
  if (p < 0) throw std::domain_error("block_log_integral: p must be >= 0");
  if (!(u > 0 && v > u)) throw std::domain_error("block_log_integral: need 0 < u < v");
  return detail::log_power_antiderivative(p, v, std::log(v)) - detail::log_power_antiderivative(p, u, std::log(u));
}

/// Block J of the base-k series for -gamma_n: the ln-polynomial
/// ln^{n-1}(k^{-nu} y)(n - ln(k^{-nu} y)) summed over nu = 0..J-1 and
/// integrated against g_k(y)/y^2 over [k^{J-1}, k^J).
inline extended_real gamma_n_basek_block_x(int n, int k, int J, bool compensated = true) {
  using T = extended_real;
  const T c = detail::xlog(T(k));
  // coefficients of the polynomial in L = ln y, summed over nu
  std::vector<T> coef(static_cast<std::size_t>(n) + 1, T(0));
  for (int nu = 0; nu < J; ++nu) {
    const T s = -T(nu) * c;
    std::vector<T> P(static_cast<std::size_t>(n), T(0));  // (L + s)^{n-1}
    T binom = 1;
    for (int i = 0; i <= n - 1; ++i) {
      T sp = 1;
      for (int e = 0; e < n - 1 - i; ++e) sp *= s;
      P[static_cast<std::size_t>(i)] = binom * sp;
      binom = binom * T(n - 1 - i) / T(i + 1);
    }
    // times (n - s) - L
    for (int p = 0; p <= n; ++p) {
      T v = 0;
      if (p <= n - 1) v += (T(n) - s) * P[static_cast<std::size_t>(p)];
      if (p >= 1) v -= P[static_cast<std::size_t>(p - 1)];
      coef[static_cast<std::size_t>(p)] += v;
    }
  }
  const T K = k;
  const T top = (K - 1) / (2 * K);
  const long long lo = detail::ipow(k, J - 1);
  std::vector<compensated_sum<T>> I(static_cast<std::size_t>(n) + 1, compensated_sum<T>(compensated));
  T xs[7], ls[7], F[7];
  for (long long m = lo; m < k * lo; ++m) {
    const T km = K * T(m);
    const T lm = detail::xlogm(m);
    for (int i = 0; i <= k; ++i) {
      xs[i] = (km + T(i)) / K;
      ls[i] = lm + detail::xlog1p_small(T(i) / km);
    }
    for (int p = 0; p <= n; ++p) {
      for (int i = 0; i <= k; ++i) F[i] = detail::log_power_antiderivative(p, xs[i], ls[i]);
      // sum_l L_l [F(x_l) - F(x_{l-1})]
      T s = 0;
      for (int l = 1; l <= k; ++l) s += (top - T(l - 1) / K) * (F[l] - F[l - 1]);
      I[static_cast<std::size_t>(p)] += s;
    }
  }
  T block = 0;
  for (int p = 0; p <= n; ++p) block += coef[static_cast<std::size_t>(p)] * I[static_cast<std::size_t>(p)].value();
  return block;
}

inline EvalResult gamma_n_basek(int n, int k, const SeriesConfig& cfg = {}) {
  if (n < 1 || n > 4) throw std::domain_error("gamma_n_basek: n must lie in 1..4");
  if (k < 2 || k > 6) throw std::domain_error("gamma_n_basek: k must lie in 2..6");
  return detail::run_blocks(
      cfg, "gamma_n_basek", 0.0, -1.0, [k](int j) { return (k - 1) * detail::ipow(k, j - 1); },
      [&](int j) {
        const extended_real b = gamma_n_basek_block_x(n, k, j, cfg.compensated);
        return detail::BlockValue{b, std::fabs(static_cast<double>(b)), (k - 1) * detail::ipow(k, j - 1)};
      },
      detail::none);
}

// ---------------------------------------------------------------------------
// Hurwitz double series

namespace detail {

/// h(x) + h(x+b) - 2 h(x+b/2) for h = ln x / x, without the cancellation of
/// the direct form.
inline double second_difference_logx_over_x(double x, double b) {
  const double beta = b / x;
  const double rational = b * b / (x * (x + b) * (2 * x + b));
  double tail;
  if (beta <= 0.25) {
    // (1/x) sum_{n>=2} (-1)^{n+1} H_n (1 - 2^{1-n}) beta^n
    double s = 0, H = 1, bp = beta, pw = 0.5;
    for (int n = 2; n < 60; ++n) {
      H += 1.0 / n;
      bp *= beta;
      pw *= 0.5;
      const double t = (n % 2 ? 1.0 : -1.0) * H * (1 - 2 * pw) * bp;
      s += t;
      if (std::fabs(t) < 1e-18 * std::fabs(s)) break;
    }
    tail = s / x;
  } else {
    tail = std::log1p(beta) / (x + b) - 4 * std::log1p(beta / 2) / (2 * x + b);
  }
  return std::log(x) * rational + tail;
}

template <class Term, class TailEst>
EvalResult hurwitz_levels(const SeriesConfig& cfg, const std::string& name, double a, double base, Term&& term,
                          TailEst&& tail_est, double level_scale_base) {
  cfg.validate();
  if (!(a > 0)) throw std::domain_error(name + ": a must be positive");
  const auto start = clock::now();
  EvalResult r;
  const double budget = cfg.tol / (4.0 * (cfg.max_blocks + 1));
  compensated_sum<double> total(cfg.compensated);
  double tails = 0;
  int small = 0;
  double last = 0;
  for (int nu = 0; nu < cfg.max_blocks; ++nu) {
    const double b = std::ldexp(1.0, -nu);
    const double scale = 0.25 * std::pow(level_scale_base, -nu);
    // smallest X = a + b (J-1) with scale * tail(X) <= budget
    double X = a + b;
    while (scale * tail_est(X, b) > budget) X *= 2;
    double lo = X / 2 < a + b ? a + b : X / 2;
    for (int it = 0; it < 60 && X - lo > b; ++it) {
      const double mid = 0.5 * (lo + X);
      (scale * tail_est(mid, b) > budget ? lo : X) = mid;
    }
    const auto J = static_cast<long long>(std::ceil((X - a) / b)) + 1;
    if (J > cfg.max_terms_per_block) {
      r.elapsed = clock::now() - start;
      r.tail_bound = tails + 2 * last;
      throw budget_exhausted<EvalResult>(name + ": level " + std::to_string(nu) + " needs " + std::to_string(J) +
                                             " terms, above max_terms_per_block",
                                         r);
    }
    compensated_sum<double> s(cfg.compensated);
    for (long long j = 0; j < J; ++j) s += term(a + b * double(j), b);
    const double level = scale * s.value();
    tails += scale * tail_est(a + b * double(J - 1), b);
    total += level;
    last = std::fabs(level);
    r.blocks_used = nu + 1;
    r.terms_used += J;
    r.value = base + total.value();
    r.trace.push_back({nu + 1, r.value, last});
    small = last < cfg.tol / 2 ? small + 1 : 0;
    if (small >= 1 && nu + 1 >= cfg.min_blocks) {
      r.tail_bound = tails + 2 * last;
      r.elapsed = clock::now() - start;
      return r;
    }
  }
  r.tail_bound = tails + 2 * last;
  r.elapsed = clock::now() - start;
  throw budget_exhausted<EvalResult>(name + ": tolerance not reached within " + std::to_string(cfg.max_blocks) +
                                         " levels",
                                     r);
}

}  // namespace detail

/// gamma_0(a) = -ln a + 1/(2a)
///   + 1/4 sum_nu 4^-nu sum_j b/((a+bj)(a+b+bj)(2a+b+2bj)), b = 2^-nu.
/// Equals -psi(a).
inline EvalResult gamma0_hurwitz(double a, const SeriesConfig& cfg = {}) {
  if (!(a > 0)) throw std::domain_error("gamma0_hurwitz: a must be positive");
  return detail::hurwitz_levels(
      cfg, "gamma0_hurwitz", a, -std::log(a) + 1 / (2 * a),
      [](double x, double b) { return b / (x * (x + b) * (2 * x + b)); },
      [](double X, double) { return 1 / (4 * X * X); }, 4.0);
}

/// gamma_1(a) = ln a/(2a) - ln^2(a)/2
///   + 1/4 sum_nu 2^-nu sum_j [h(a+bj) + h(a+b+bj) - 2 h(a+b(j+1/2))],
/// h(x) = ln x / x, b = 2^-nu.
inline EvalResult gamma1_hurwitz(double a, const SeriesConfig& cfg = {}) {
  if (!(a > 0)) throw std::domain_error("gamma1_hurwitz: a must be positive");
  const double la = std::log(a);
  return detail::hurwitz_levels(
      cfg, "gamma1_hurwitz", a, la / (2 * a) - la * la / 2,
      [](double x, double b) { return detail::second_difference_logx_over_x(x, b); },
      [](double X, double b) {
        const double L = std::log(X);
        return b / 4 * (std::fabs(1 - L) + 1) / (X * X) + b * b / 4 * (std::fabs(2 * L - 3) + 1) / (X * X * X);
      },
      2.0);
}

// ---------------------------------------------------------------------------
// p-constant series

namespace detail {

inline double pseries_tail(const std::vector<double>& t) {
  const std::size_t N = t.size();
  if (N == 0) return 0;
  const double tn = std::fabs(t[N - 1]);
  if (N < 4 || tn == 0) return N * tn + tn;
  const double th = std::fabs(t[N / 2 - 1]);
  double alpha = th > 0 ? std::log(th / tn) / std::log(double(N) / double(N / 2)) : 2;
  if (!std::isfinite(alpha)) alpha = 2;
  return 1.5 * double(N) * tn / std::max(alpha - 1, 0.25);
}

}  // namespace detail

/// sum_{n=1}^N (n-1)! p_{n+1}/(a)_n, which tends to ln a - psi(a).
inline EvalResult gamma0_pseries(double a, int N, const PTable<double>& table) {
  if (!(a > 0)) throw std::domain_error("gamma0_pseries: a must be positive");
  if (N < 1 || N > table.max_index) throw std::domain_error("gamma0_pseries: N must lie in 1..table.max_index");
  const auto start = detail::clock::now();
  EvalResult r;
  compensated_sum<double> s;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(N));
  double ratio = 1 / a;  // (n-1)!/(a)_n
  for (int n = 1; n <= N; ++n) {
    if (n > 1) ratio *= double(n - 1) / (a + n - 1);
    const double t = ratio * table[n];
    terms.push_back(t);
    s += t;
    r.trace.push_back({n, s.value(), std::fabs(t)});
  }
  r.value = s.value();
  r.tail_bound = detail::pseries_tail(terms);
  r.blocks_used = N;
  r.terms_used = N;
  r.elapsed = detail::clock::now() - start;
  return r;
}

enum class PInner { binomial, quadrature, automatic };

inline const char* to_string(PInner i) {
  switch (i) {
    case PInner::binomial: return "binomial";
    case PInner::quadrature: return "quadrature";
    case PInner::automatic: return "automatic";
  }
  return "?";
}

/// sum_{k=0}^{n-1} (-1)^k C(n-1,k) ln(k+a)/(k+a) by direct expansion.
/// Terms are summed in long double; throws cancellation_error when the
/// rounding estimate n * eps * max|term| exceeds 1e-8 of the result.
inline double pseries_inner_binomial(double a, int n) {
  if (n < 1) throw std::domain_error("pseries_inner: n must be >= 1");
  compensated_sum<long double> s;
  long double c = 1;
  long double biggest = 0;
  for (int k = 0; k <= n - 1; ++k) {
    const long double x = a + k;
    const long double t = (k % 2 ? -c : c) * std::log(x) / x;
    biggest = std::max(biggest, std::fabs(t));
    s += t;
    c = c * (n - 1 - k) / (k + 1);
  }
  const auto v = static_cast<double>(s.value());
  if (n * std::numeric_limits<long double>::epsilon() * biggest > 1e-8L * std::fabs(v))
    throw cancellation_error("pseries_inner_binomial: n = " + std::to_string(n) +
                             " loses more than 8 digits to cancellation");
  return v;
}

/// The same inner sum as -gamma (n-1)!/(a)_n - int_0^1 x^{a-1}(1-x)^{n-1} ln ln(1/x) dx.
inline double pseries_inner_quadrature(double a, int n, const QuadratureSpec& spec = {1e-13}) {
  if (n < 1) throw std::domain_error("pseries_inner: n must be >= 1");
  double ratio = 1 / a;
  for (int i = 1; i < n; ++i) ratio *= double(i) / (a + i);
  return -euler_gamma<double> * ratio - beta_loglog_moment(a, n, spec).value;
}

/// sum_{n=1}^N p_{n+1} inner_n(a), which tends to ln^2(a)/2 + gamma_1(a).
/// The automatic inner route uses the binomial sum for n <= 25 and
/// quadrature beyond.
inline EvalResult gamma1_pseries(double a, int N, const PTable<double>& table, PInner inner = PInner::automatic) {
  if (!(a > 0)) throw std::domain_error("gamma1_pseries: a must be positive");
  if (N < 1 || N > table.max_index) throw std::domain_error("gamma1_pseries: N must lie in 1..table.max_index");
  if (inner == PInner::binomial && N > 40)
    throw std::domain_error("gamma1_pseries: the binomial inner route is limited to N <= 40");
  const auto start = detail::clock::now();
  EvalResult r;
  compensated_sum<double> s;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    const bool binom = inner == PInner::binomial || (inner == PInner::automatic && n <= 25);
    const double in = binom ? pseries_inner_binomial(a, n) : pseries_inner_quadrature(a, n);
    const double t = table[n] * in;
    terms.push_back(t);
    s += t;
    r.trace.push_back({n, s.value(), std::fabs(t)});
    r.terms_used += binom ? n : 1;
  }
  r.value = s.value();
  r.tail_bound = detail::pseries_tail(terms);
  r.blocks_used = N;
  r.terms_used = std::max<long long>(r.terms_used, N);
  r.elapsed = detail::clock::now() - start;
  return r;
}

}  // namespace stieltjes
