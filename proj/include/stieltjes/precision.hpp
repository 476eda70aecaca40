#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>

#if defined(STIELTJES_HAS_FLOAT128)
extern "C" {
#include <quadmath.h>
}
#endif

namespace stieltjes {

/// Unit roundoff of the active real type. Every tolerance check in the
/// library is expressed relative to this.
struct WorkingPrecision {
  double epsilon;
  int min_bits;

  template <class Real>
  static constexpr WorkingPrecision of() {
    return {static_cast<double>(std::numeric_limits<Real>::epsilon()),
            std::numeric_limits<Real>::digits};
  }
};

/// Type used for the per-term closed forms of the base-k block series. Those
/// forms subtract logarithmic quantities of size ln(m)/m to produce terms of
/// size ln(m)/m^3, so they need roughly 2*log10(m) extra digits.
#if defined(STIELTJES_HAS_FLOAT128)
using extended_real = __float128;
#else
using extended_real = long double;
#endif

namespace detail {

inline double xlog(double x) { return std::log(x); }
inline long double xlog(long double x) { return std::log(x); }
inline double xlog1p(double x) { return std::log1p(x); }
inline long double xlog1p(long double x) { return std::log1p(x); }
inline double xabs(double x) { return std::fabs(x); }
inline long double xabs(long double x) { return std::fabs(x); }
#if defined(STIELTJES_HAS_FLOAT128)
inline __float128 xlog(__float128 x) { return logq(x); }
inline __float128 xlog1p(__float128 x) { return log1pq(x); }
inline __float128 xabs(__float128 x) { return fabsq(x); }
#endif

template <class T>
T ln2() {
  return xlog(T(2));
}

}  // namespace detail

/// Neumaier-compensated accumulator. With compensation off it is a plain
/// running sum; either way terms are added in call order.
template <class Real>
class compensated_sum {
 public:
  explicit compensated_sum(bool compensated = true) : on_(compensated) {}

  void add(Real x) {
    if (!on_) {
      sum_ += x;
      return;
    }
    Real t = sum_ + x;
    if (detail::xabs(sum_) >= detail::xabs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }

  compensated_sum& operator+=(Real x) {
    add(x);
    return *this;
  }

  Real value() const { return sum_ + carry_; }

 private:
  Real sum_{0};
  Real carry_{0};
  bool on_;
};

}  // namespace stieltjes
