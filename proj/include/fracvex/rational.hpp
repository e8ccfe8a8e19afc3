#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fracvex {

/// Exact rational number num/den with den > 0 and gcd(num, den) == 1.
/// Used for exponent multipliers so that k*alpha is formed only once, at the
/// point of use.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// k * alpha computed as num*alpha/den.
  double times(double alpha) const {
    return static_cast<double>(num_) * alpha / static_cast<double>(den_);
  }

  /// "3", "-1/2".
  std::string to_string() const;

  /// Accepts "p" or "p/q" with an optional leading sign.
  static Rational parse(std::string_view text);

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace fracvex
