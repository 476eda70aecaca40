#pragma once

// Adaptive Gauss-Legendre quadrature with endpoint handling, and the
// integral representations built on it: the Addison and Berndt-type
// integrals for gamma, gamma_1, gamma_2 and psi, the hypergeometric
// integral for gamma_0(a), and the logarithmic-integral identity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "stieltjes/errors.hpp"
#include "stieltjes/precision.hpp"
#include "stieltjes/specfun.hpp"

namespace stieltjes {

enum class TailPolicy { analytic_bound, extrapolate };

struct QuadratureSpec {
  double tol = 1e-10;
  int max_subdivisions = 4000;
  /// Panels narrower than left_guard * (hi - lo) are accepted as they are.
  double left_guard = 1e-12;
  /// Offset from 1 where integrands with a logarithmic end at x = 1 switch
  /// to the variable t = -ln(1 - x).
  double right_guard = 1e-3;
  TailPolicy tail_policy = TailPolicy::analytic_bound;

  void validate() const {
    const double eps = std::numeric_limits<double>::epsilon();
    if (!(tol >= 100 * eps))
      throw std::domain_error("QuadratureSpec: tol must be at least 100 * epsilon");
    if (!(left_guard > 0 && left_guard < 0.1) || !(right_guard > 0 && right_guard < 0.1))
      throw std::domain_error("QuadratureSpec: guards must lie in (0, 0.1)");
    if (max_subdivisions < 1) throw std::domain_error("QuadratureSpec: max_subdivisions must be >= 1");
  }
};

struct QuadResult {
  double value = 0;
  double abs_error_est = 0;
  long long evaluations = 0;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    abs_error_est += o.abs_error_est;
    evaluations += o.evaluations;
    return *this;
  }
};

namespace detail {

// 10-point Gauss-Legendre on [-1,1], symmetric half.
inline constexpr double gl_x[5] = {0.148874338981631210884826001129720, 0.433395394129247190799265943165784,
                                   0.679409568299024406234327365114874, 0.865063366688984510732096688423493,
                                   0.973906528517171720077964012084452};
inline constexpr double gl_w[5] = {0.295524224714752870173892994651338, 0.269266719309996355091226921569469,
                                   0.219086362515982043995534934228163, 0.149451349150580593145776339657697,
                                   0.066671344308688137593568809893332};

template <class F>
double gl10(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0;
  for (int i = 0; i < 5; ++i) {
    const double d = h * gl_x[i];
    s += gl_w[i] * (f(c - d) + f(c + d));
  }
  return s * h;
}

struct Panel {
  double a, b;
  double whole;  // single-rule value on [a,b]
  double left, right;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

/// Adaptive global bisection. Each panel carries a 10-point Gauss-Legendre
/// value and the values of its two halves; the error estimate is their
/// difference. The panel with the largest estimate is split until the
/// summed estimate drops below spec.tol.
template <class F>
QuadResult integrate(F&& f, double lo, double hi, const QuadratureSpec& spec) {
  spec.validate();
  if (!(lo < hi)) throw std::domain_error("integrate: need lo < hi");
  long long evals = 0;
  auto make = [&](double a, double b, double whole) {
    const double m = 0.5 * (a + b);
    detail::Panel p{a, b, whole, detail::gl10(f, a, m), detail::gl10(f, m, b), 0};
    evals += 20;
    p.err = std::fabs(p.whole - (p.left + p.right));
    return p;
  };
  std::priority_queue<detail::Panel> open;
  std::vector<detail::Panel> settled;
  const double whole = detail::gl10(f, lo, hi);
  evals += 10;
  open.push(make(lo, hi, whole));
  const double min_width = spec.left_guard * (hi - lo);

  auto totals = [&] {
    compensated_sum<double> v, e;
    std::vector<detail::Panel> all = settled;
    auto copy = open;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    for (const auto& p : all) {
      v += p.left + p.right;
      e += p.err;
    }
    return QuadResult{v.value(), e.value(), evals};
  };

  double err_sum = open.top().err;
  int splits = 0;
  while (!open.empty()) {
    if (!std::isfinite(err_sum))
      throw tolerance_not_met<QuadResult>("integrate: integrand not finite on the interval", totals());
    if (err_sum <= spec.tol) break;
    if (splits >= spec.max_subdivisions) {
      QuadResult best = totals();
      throw tolerance_not_met<QuadResult>(
          "integrate: error estimate " + std::to_string(best.abs_error_est) + " above tol " +
              std::to_string(spec.tol) + " after " + std::to_string(splits) + " subdivisions",
          best);
    }
    detail::Panel p = open.top();
    open.pop();
    err_sum -= p.err;
    const double m = 0.5 * (p.a + p.b);
    if (p.b - p.a < min_width || m <= p.a || m >= p.b) {
      settled.push_back(p);
      err_sum += p.err;
      if (open.empty()) break;
      continue;
    }
    detail::Panel l = make(p.a, m, p.left);
    detail::Panel r = make(m, p.b, p.right);
    err_sum += l.err + r.err;
    open.push(l);
    open.push(r);
    ++splits;
    // Refresh the running sum now and then to shed cancellation drift.
    if (splits % 256 == 0) err_sum = totals().abs_error_est;
  }
  return totals();
}

/// Integral over [lo, 1) of an integrand with at most a logarithmic
/// singularity at 1. g(x, xc) receives xc = 1 - x exactly. Past
/// 1 - right_guard the variable t = -ln(1-x) is used up to t = 50; the
/// remainder is bounded by 2 delta |g(1-delta, delta)|, delta = e^-50.
template <class G>
QuadResult integrate_to_one(G&& g, double lo, const QuadratureSpec& spec) {
  spec.validate();
  const double guard = spec.right_guard;
  if (!(lo < 1 - guard)) throw std::domain_error("integrate_to_one: lo too close to 1");
  QuadratureSpec half = spec;
  half.tol = spec.tol / 2;
  QuadResult r = integrate([&](double x) { return g(x, 1 - x); }, lo, 1 - guard, half);
  constexpr double t_max = 50;
  r += integrate(
      [&](double t) {
        const double xc = std::exp(-t);
        return g(1 - xc, xc) * xc;
      },
      -std::log(guard), t_max, half);
  const double delta = std::exp(-t_max);
  const double edge = delta * std::fabs(g(1 - delta, delta));
  r.evaluations += 1;
  if (spec.tail_policy == TailPolicy::extrapolate) r.value += g(1 - delta, delta) * delta;
  r.abs_error_est += 2 * edge;
  return r;
}

namespace detail {

/// ln x given x and xc = 1 - x, accurate at both ends.
inline double log_x(double x, double xc) { return xc < 0.5 ? std::log1p(-xc) : std::log(x); }

/// Calls visit(k, x^{a n^k - 1}) for k = 1..K, stopping once x^{a n^{k}}
/// has fallen below e^-46.
template <class Visit>
void for_each_xpow(double lnx, double a, int n, Visit&& visit) {
  double nk = n;
  for (int k = 1;; ++k) {
    const double expo = a * nk;
    if (expo * -lnx > 46 || k > 2000) break;
    visit(k, std::exp((expo - 1) * lnx));
    nk *= n;
  }
}

}  // namespace detail

/// sum_{k=1}^K x^{n^k - 1}, with K the first index where x^{n^{K+1}} < tol.
inline double sum_xpow_nk(double x, int n, double tol = 1e-17) {
  if (!(x > 0 && x < 1)) throw std::domain_error("sum_xpow_nk: x must lie in (0,1)");
  if (n < 2) throw std::domain_error("sum_xpow_nk: n must be > 1");
  const double lnx = std::log(x);
  const double stop = std::log(1 / tol);
  double s = 0;
  double nk = n;
  for (int k = 1; k < 2000; ++k) {
    s += std::exp((nk - 1) * lnx);
    if (nk * n * -lnx > stop) break;
    nk *= n;
  }
  return s;
}

/// n/(1-x^n) - 1/(1-x), evaluated as
/// sum_{i=0}^{n-2} (n-1-i) x^i / sum_{j=0}^{n-1} x^j, which is exact algebra
/// and has no cancellation anywhere on [0,1].
inline double berndt_kernel(double x, int n) {
  if (n < 2) throw std::domain_error("berndt_kernel: n must be > 1");
  if (!(x >= 0 && x <= 1)) throw std::domain_error("berndt_kernel: x must lie in [0,1]");
  double num = 0;
  double den = 0;
  double xp = 1;
  for (int i = 0; i < n; ++i) {
    if (i <= n - 2) num += (n - 1 - i) * xp;
    den += xp;
    xp *= x;
  }
  return num / den;
}

/// Right side of the kernel expansion
///   1/ln x + 1/(1-x) = sum_{k>=1} kernel(x^{1/n^k}, n) / n^k,
/// truncated after `terms` terms.
inline double berndt_series(double x, int n, int terms) {
  if (!(x > 0 && x < 1)) throw std::domain_error("berndt_series: x must lie in (0,1)");
  const double lnx = std::log(x);
  compensated_sum<double> s;
  double nk = 1;
  for (int k = 1; k <= terms; ++k) {
    nk *= n;
    s += berndt_kernel(std::exp(lnx / nk), n) / nk;
  }
  return s.value();
}

/// gamma = 1/2 + 1/2 int_0^1 (1-x)/(1+x) sum_{n>=1} x^{2^n - 1} dx.
inline QuadResult addison_integral(const QuadratureSpec& spec = {}) {
  QuadratureSpec inner = spec;
  inner.tol = 2 * spec.tol;
  QuadResult r = integrate_to_one(
      [](double x, double xc) {
        if (x <= 0) return 0.0;
        const double lnx = detail::log_x(x, xc);
        double s = 0;
        detail::for_each_xpow(lnx, 1.0, 2, [&](int, double t) { s += t; });
        return xc / (1 + x) * s;
      },
      0.0, inner);
  r.value = 0.5 + 0.5 * r.value;
  r.abs_error_est *= 0.5;
  return r;
}

/// int_0^1 (1-x)/(1+x) x^p dx = -1/(p+1) + H_{p/2} - H_{(p-1)/2} with
/// H_z = psi(z+1) + gamma.
inline double addison_moment_closed(int p) {
  if (p < 1) throw std::domain_error("addison_moment_closed: p must be >= 1");
  return -1.0 / (p + 1) + digamma(p / 2.0 + 1) - digamma((p - 1) / 2.0 + 1);
}

inline QuadResult addison_moment(int p, const QuadratureSpec& spec = {}) {
  return integrate([p](double x) { return (1 - x) / (1 + x) * std::pow(x, p); }, 0.0, 1.0, spec);
}

namespace detail {

// sum_k w(k, lnln(1/x)) x^{a n^k - 1}, times the kernel.
template <class Weight>
QuadResult prop4_integral(double a, int n, const QuadratureSpec& spec, Weight&& w) {
  if (!(a > 0)) throw std::domain_error("Proposition 4 integrals: a must be positive");
  if (n < 2 || n > 8) throw std::domain_error("Proposition 4 integrals: n must lie in 2..8");
  const double lnn = std::log(double(n));
  return integrate_to_one(
      [&](double x, double xc) {
        if (x <= 0) return 0.0;
        const double lnx = log_x(x, xc);
        const double ll = std::log(-lnx);
        double s = 0;
        for_each_xpow(lnx, a, n, [&](int k, double t) { s += w(k * lnn, ll) * t; });
        return berndt_kernel(x, n) * s;
      },
      0.0, spec);
}

}  // namespace detail

/// gamma^2 + gamma_1 = -int_0^1 kernel(x,n) sum_k [k ln n + ln ln(1/x)] x^{n^k-1} dx.
inline QuadResult prop4_gamma1(int n, const QuadratureSpec& spec = {}) {
  QuadResult r = detail::prop4_integral(1.0, n, spec, [](double kl, double ll) { return kl + ll; });
  r.value = -r.value;
  return r;
}

/// ln a - psi(a) = int_0^1 kernel(x,n) sum_k x^{a n^k - 1} dx.
inline QuadResult prop4_psi(double a, int n, const QuadratureSpec& spec = {}) {
  return detail::prop4_integral(a, n, spec, [](double, double) { return 1.0; });
}

/// gamma ln a + ln^2(a)/2 - gamma psi(a) + gamma_1(a), as
/// -int_0^1 kernel(x,n) sum_k [k ln n + ln ln(1/x)] x^{a n^k - 1} dx.
inline QuadResult prop4_gamma1_hurwitz(double a, int n, const QuadratureSpec& spec = {}) {
  QuadResult r = detail::prop4_integral(a, n, spec, [](double kl, double ll) { return kl + ll; });
  r.value = -r.value;
  return r;
}

/// gamma_1(a) from the value of prop4_gamma1_hurwitz.
inline double prop4_extract_gamma1(double a, double integral) {
  const double g = euler_gamma<double>;
  const double la = std::log(a);
  return integral - g * la - 0.5 * la * la + g * digamma(a);
}

/// (gamma^2 + pi^2/6)(ln a - psi(a)) + gamma ln^2 a + ln^3(a)/3 + 2 gamma gamma_1(a) + gamma_2(a)
/// as int_0^1 kernel(x,n) sum_k [k ln n + ln ln(1/x)]^2 x^{a n^k - 1} dx.
inline QuadResult prop4_gamma2_hurwitz(double a, int n, const QuadratureSpec& spec = {}) {
  return detail::prop4_integral(a, n, spec, [](double kl, double ll) { return (kl + ll) * (kl + ll); });
}

/// gamma_2(a) from the value of prop4_gamma2_hurwitz, given gamma_1(a).
inline double prop4_extract_gamma2(double a, double integral, double gamma1_a) {
  const double g = euler_gamma<double>;
  const double z2 = std::numbers::pi * std::numbers::pi / 6;
  const double la = std::log(a);
  return integral - ((g * g + z2) * (la - digamma(a)) + g * la * la + la * la * la / 3 + 2 * g * gamma1_a);
}

enum class Cor3Form { v_form, u_form };

inline const char* to_string(Cor3Form f) { return f == Cor3Form::v_form ? "v_form" : "u_form"; }

/// ln a + gamma_0(a) = (1/a) int_0^1 2F1(1,1;1+a;v) / (ln^2((1-v)/v) + pi^2) dv/v.
///
/// u_form integrates the equivalent expression over t = ln u, u = (1-v)/v:
///   (1/a) int F(v) (1-v) / (t^2 + pi^2) dt, v = 1/(1+e^t),
/// with the t > 60 part taken in closed form (F -> 1 there) and the t < -40/a
/// part bounded by its exponential decay.
inline QuadResult corollary3(double a, const QuadratureSpec& spec = {}, Cor3Form form = Cor3Form::u_form) {
  if (!(a > 0)) throw std::domain_error("corollary3: a must be positive");
  spec.validate();
  const double pi = std::numbers::pi;
  QuadratureSpec part = spec;
  part.tol = spec.tol * a / 2;
  QuadResult r;
  if (form == Cor3Form::u_form) {
    const double t_hi = 60;
    const double t_lo = -40 / a;
    r = integrate(
        [&](double t) {
          const double w = 1 / (1 + std::exp(-t));
          return hyp2f1_11_complement(a, w) * w / (t * t + pi * pi);
        },
        t_lo, t_hi, part);
    r.value += (pi / 2 - std::atan(t_hi / pi)) / pi;
    // t < t_lo: integrand ~ C e^{a t}/(t^2+pi^2)
    const double w_lo = 1 / (1 + std::exp(-t_lo));
    const double edge = hyp2f1_11_complement(a, w_lo) * w_lo / (t_lo * t_lo + pi * pi);
    r.abs_error_est += edge / a;
  } else {
    const double delta = spec.left_guard;
    auto h = [&](double v, double w) {
      const double L = std::log(w / v);
      return hyp2f1_11_complement(a, w) / (v * (L * L + pi * pi));
    };
    // v in [delta, 1/2], then w = 1 - v in [delta, 1/2]
    r = integrate([&](double v) { return h(v, 1 - v); }, delta, 0.5, part);
    r += integrate([&](double w) { return h(1 - w, w); }, delta, 0.5, part);
    const double L = std::log((1 - delta) / delta);
    r.value += (pi / 2 - std::atan(L / pi)) / pi;
    r.abs_error_est += delta * std::fabs(h(1 - delta, delta)) / std::min(a, 1.0) + delta;
  }
  r.value /= a;
  r.abs_error_est /= a;
  return r;
}

/// li(y) = int_0^y dt/ln t for 0 < y < 1.
inline QuadResult logarithmic_integral(double y, const QuadratureSpec& spec = {}) {
  if (!(y > 0 && y < 1)) throw std::domain_error("logarithmic_integral: y must lie in (0,1)");
  return integrate([](double t) { return 1 / std::log(t); }, 0.0, y, spec);
}

/// -ln(1-y) + li(y) = int_0^y kernel(x,n) sum_k x^{n^k-1} dx.
inline QuadResult corollary4(double y, int n, const QuadratureSpec& spec = {}) {
  if (!(y > 0 && y < 1)) throw std::domain_error("corollary4: y must lie in (0,1)");
  if (n < 2) throw std::domain_error("corollary4: n must be > 1");
  // sum_k int_0^{y^{1/N}} K(x) x^{N-1} dx with N = n^k. Once N passes 2^20 the
  // kernel is flat on the support: each term is y K(1)/N + O(y ln y/N^2),
  // and K(1) = (n-1)/2 sums the remaining terms to y/(2N).
  QuadResult total;
  QuadratureSpec inner = spec;
  inner.tol = spec.tol / 64;
  double N = n;
  // x = y^{1/N} e^{-t/N} turns each term into (y/N) int_0^inf e^{-t} K(x) dt
  const double ly = std::log(y);
  for (; N < 1048576.0; N *= n) {
    const double t_hi = 46;
    QuadResult r = integrate([n, ly, N](double t) { return std::exp(-t) * berndt_kernel(std::exp((ly - t) / N), n); },
                             0.0, t_hi, inner);
    r.abs_error_est += std::exp(-t_hi) * (n - 1);
    r.value *= y / N;
    r.abs_error_est *= y / N;
    total += r;
  }
  total.value += y / (2 * (N / n));
  total.abs_error_est += y * (1 - std::log(y)) * double(n) / (N * N);
  return total;
}

/// The same sum with every upper limit left at y. Depends on n and does not
/// reproduce -ln(1-y) + li(y) for y < 1.
inline QuadResult corollary4_fixed_limit(double y, int n, const QuadratureSpec& spec = {}) {
  if (!(y > 0 && y < 1)) throw std::domain_error("corollary4_fixed_limit: y must lie in (0,1)");
  if (n < 2) throw std::domain_error("corollary4_fixed_limit: n must be > 1");
  return integrate(
      [n](double x) {
        double s = 0;
        detail::for_each_xpow(std::log(x), 1.0, n, [&](int, double t) { s += t; });
        return berndt_kernel(x, n) * s;
      },
      0.0, y, spec);
}

inline double corollary4_closed(double y, const QuadratureSpec& spec = {}) {
  return -std::log1p(-y) + logarithmic_integral(y, spec).value;
}

/// int_0^1 x^k ln ln(1/x) dx by quadrature.
inline QuadResult loglog_moment(int k, const QuadratureSpec& spec = {}) {
  if (k < 0) throw std::domain_error("loglog_moment: k must be >= 0");
  return integrate_to_one(
      [k](double x, double xc) {
        if (x <= 0) return 0.0;
        return std::pow(x, k) * std::log(-detail::log_x(x, xc));
      },
      0.0, spec);
}

/// -(gamma + ln(k+1))/(k+1).
inline double loglog_moment_closed(int k) {
  return -(euler_gamma<double> + std::log(double(k + 1))) / (k + 1);
}

/// int_0^1 x^{a-1} (1-x)^{n-1} ln ln(1/x) dx, computed as
/// int_0^inf e^{-a t} (1 - e^{-t})^{n-1} ln t dt.
inline QuadResult beta_loglog_moment(double a, int n, const QuadratureSpec& spec = {}) {
  if (!(a > 0) || n < 1) throw std::domain_error("beta_loglog_moment: need a > 0, n >= 1");
  const double t_hi = (46 + std::log(double(n))) / a;
  QuadResult r = integrate(
      [a, n](double t) {
        if (t <= 0) return 0.0;
        return std::exp(-a * t + (n - 1) * std::log1p(-std::exp(-t))) * std::log(t);
      },
      0.0, t_hi, spec);
  r.abs_error_est += std::exp(-a * t_hi) * std::log(t_hi) / a;
  return r;
}

}  // namespace stieltjes
