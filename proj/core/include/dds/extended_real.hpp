#pragma once

#include <cassert>
#include <limits>
#include <ostream>

namespace dds {

/**
 * A real number or +infinity.
 *
 * Support functions of unbounded sets take the value +inf outside the dual
 * cone; the tag keeps that case distinct from large finite values.
 */
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double value) : value_{value} {}  // NOLINT

  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.finite_ = false;
    return r;
  }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }

  /// Finite value. Must only be called when is_finite().
  constexpr double value() const {
    assert(finite_);
    return value_;
  }

  /// Finite value, or +inf as an IEEE double (for printing and comparisons).
  constexpr double to_double() const {
    return finite_ ? value_ : std::numeric_limits<double>::infinity();
  }

  friend constexpr ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return ExtendedReal{a.value_ + b.value_};
  }

  ExtendedReal& operator+=(ExtendedReal other) {
    *this = *this + other;
    return *this;
  }

  /// Scaling by a strictly positive factor (positive homogeneity).
  friend constexpr ExtendedReal scale(ExtendedReal a, double positive) {
    assert(positive > 0.0);
    if (!a.finite_) return infinity();
    return ExtendedReal{a.value_ * positive};
  }

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, ExtendedReal r) {
    if (r.finite_) return os << r.value_;
    return os << "+inf";
  }

 private:
  double value_ = 0.0;
  bool finite_ = true;
};

}  // namespace dds
