#pragma once

#include <compare>
#include <string>

#include "fracvex/rational.hpp"

namespace fracvex {

/// Fractal order, 0 < alpha <= 1.
class Alpha {
 public:
  explicit Alpha(double value);

  double value() const { return value_; }
  bool is_one() const { return value_ == 1.0; }

  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  double value_;
};

/// Signed power sign(u)*|u|^beta. Negative elements of R^alpha are the
/// images of negative bases under this map, so -(a^alpha) == (-a)^alpha.
double spow(double u, double beta);

/// Ordinary real power for rational exponents: integer exponents keep the
/// sign pattern of repeated multiplication, non-integer exponents require a
/// non-negative base.
double rpow(double u, Rational r);

/// An element a^alpha of the fractal set R^alpha, stored by its base a.
///
/// Arithmetic acts on the bases, so (a^alpha) + (b^alpha) == (a+b)^alpha and
/// (a^alpha)(b^alpha) == (ab)^alpha hold exactly whenever the base arithmetic
/// is exact. The displayed value is spow(base, alpha).
class FractalNumber {
 public:
  FractalNumber(double base, Alpha alpha) : base_(base), alpha_(alpha) {}

  /// Element whose displayed value is v: base = spow(v, 1/alpha).
  static FractalNumber from_value(double v, Alpha alpha);

  double base() const { return base_; }
  Alpha alpha() const { return alpha_; }
  double display() const;

  friend FractalNumber operator+(const FractalNumber& x, const FractalNumber& y);
  friend FractalNumber operator-(const FractalNumber& x, const FractalNumber& y);
  friend FractalNumber operator*(const FractalNumber& x, const FractalNumber& y);
  friend FractalNumber operator/(const FractalNumber& x, const FractalNumber& y);
  FractalNumber operator-() const { return {-base_, alpha_}; }

  /// Bit-exact base equality at the same alpha.
  friend bool operator==(const FractalNumber&, const FractalNumber&) = default;

  /// Base order; u -> spow(u, alpha) is strictly increasing so this is also
  /// the order of displayed values. Throws AlphaMismatch across orders.
  friend std::partial_ordering operator<=>(const FractalNumber& x,
                                           const FractalNumber& y);

  std::string to_string() const;

 private:
  double base_;
  Alpha alpha_;
};

/// Base raised to a rational power (rpow on the base).
FractalNumber pow(const FractalNumber& x, Rational k);

/// Base raised to a real power; the base must be positive.
FractalNumber pow(const FractalNumber& x, double r);

inline FractalNumber fract_add(const FractalNumber& x, const FractalNumber& y) { return x + y; }
inline FractalNumber fract_sub(const FractalNumber& x, const FractalNumber& y) { return x - y; }
inline FractalNumber fract_mul(const FractalNumber& x, const FractalNumber& y) { return x * y; }
inline FractalNumber fract_div(const FractalNumber& x, const FractalNumber& y) { return x / y; }
inline FractalNumber fract_neg(const FractalNumber& x) { return -x; }
inline std::partial_ordering fract_cmp(const FractalNumber& x, const FractalNumber& y) {
  return x <=> y;
}
inline FractalNumber fract_from_value(double v, Alpha alpha) {
  return FractalNumber::from_value(v, alpha);
}

}  // namespace fracvex
