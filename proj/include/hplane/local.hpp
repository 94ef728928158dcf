#pragma once

#include <cmath>
#include <limits>

#include "hplane/extreal.hpp"

namespace hplane {

/// Leading behaviour coef·u^order of a real function near a point x, with
/// u = t − x for finite x and u = 1/t at ∞.
struct LocalValue {
  double coef = 1.0;
  int order = 0;

  [[nodiscard]] bool is_zero() const { return order > 0 || coef == 0.0; }
  [[nodiscard]] bool is_pole() const { return order < 0; }
  // The value at x: 0 for a zero, ∞ for a pole.
  [[nodiscard]] ExtPoint value() const {
    if (order > 0) return 0.0;
    if (order < 0) return ExtPoint::infinity();
    return coef;
  }
  [[nodiscard]] double real() const {
    if (order > 0) return 0.0;
    if (order < 0) return std::numeric_limits<double>::infinity();
    return coef;
  }

  friend LocalValue operator*(LocalValue x, LocalValue y) { return {x.coef * y.coef, x.order + y.order}; }
  friend LocalValue operator/(LocalValue x, LocalValue y) { return {x.coef / y.coef, x.order - y.order}; }
};

}  // namespace hplane
