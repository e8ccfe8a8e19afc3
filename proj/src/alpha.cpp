#include "fracvex/alpha.hpp"

#include <cmath>
#include <sstream>

#include "fracvex/error.hpp"

namespace fracvex {

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    std::ostringstream os;
    os << "alpha must satisfy 0 < alpha <= 1, got " << value;
    throw DomainError(os.str());
  }
}

double spow(double u, double beta) {
  if (beta == 1.0) return u;
  if (u < 0.0) return -std::pow(-u, beta);
  return std::pow(u, beta);
}

double rpow(double u, Rational r) {
  if (r.is_integer()) {
    if (u == 0.0 && r.num() < 0) throw DomainError("zero raised to a negative power");
    return std::pow(u, static_cast<double>(r.num()));
  }
  if (u < 0.0) {
    throw DomainError("negative base " + std::to_string(u) +
                      " raised to non-integer power " + r.to_string());
  }
  if (u == 0.0 && r.num() < 0) throw DomainError("zero raised to a negative power");
  return std::pow(u, r.to_double());
}

FractalNumber FractalNumber::from_value(double v, Alpha alpha) {
  return {spow(v, 1.0 / alpha.value()), alpha};
}

double FractalNumber::display() const { return spow(base_, alpha_.value()); }

namespace {
void check_same(const FractalNumber& x, const FractalNumber& y) {
  if (!(x.alpha() == y.alpha())) throw AlphaMismatch();
}
}  // namespace

FractalNumber operator+(const FractalNumber& x, const FractalNumber& y) {
  check_same(x, y);
  return {x.base_ + y.base_, x.alpha_};
}

FractalNumber operator-(const FractalNumber& x, const FractalNumber& y) {
  check_same(x, y);
  return {x.base_ - y.base_, x.alpha_};
}

FractalNumber operator*(const FractalNumber& x, const FractalNumber& y) {
  check_same(x, y);
  return {x.base_ * y.base_, x.alpha_};
}

FractalNumber operator/(const FractalNumber& x, const FractalNumber& y) {
  check_same(x, y);
  if (y.base_ == 0.0) throw DomainError("division by 0^alpha");
  return {x.base_ / y.base_, x.alpha_};
}

std::partial_ordering operator<=>(const FractalNumber& x, const FractalNumber& y) {
  check_same(x, y);
  return x.base_ <=> y.base_;
}

std::string FractalNumber::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << base_ << ")^" << alpha_.value();
  return os.str();
}

FractalNumber pow(const FractalNumber& x, Rational k) {
  return {rpow(x.base(), k), x.alpha()};
}

FractalNumber pow(const FractalNumber& x, double r) {
  if (!(x.base() > 0.0)) throw DomainError("real power of a non-positive base");
  return {std::pow(x.base(), r), x.alpha()};
}

}  // namespace fracvex
