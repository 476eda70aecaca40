#pragma once

#include <stdexcept>

namespace stieltjes {

/// Identifies gamma_n(a); gamma_n(1) is the ordinary Stieltjes constant.
struct HurwitzPoint {
  int n = 0;
  double a = 1;

  void validate() const {
    if (n < 0) throw std::domain_error("HurwitzPoint: n must be >= 0");
    if (!(a > 0)) throw std::domain_error("HurwitzPoint: a must be positive");
  }
};

}  // namespace stieltjes
