#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fracvex/alpha.hpp"
#include "fracvex/expr.hpp"
#include "fracvex/rational.hpp"

namespace fracvex {

struct AlphaTerm {
  Rational k;
  double coeff = 0.0;

  friend bool operator==(const AlphaTerm&, const AlphaTerm&) = default;
};

/// sum_k coeff_k * (x - anchor)^{k alpha}, the class on which local fractional
/// differentiation and integration are exact.
///
/// Terms are kept sorted by strictly increasing k (duplicates merged); every
/// k is >= 0 and every coefficient finite.
class AlphaPolynomial {
 public:
  AlphaPolynomial() = default;
  AlphaPolynomial(double anchor, std::vector<AlphaTerm> terms);

  double anchor() const { return anchor_; }
  std::span<const AlphaTerm> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of (x - anchor)^{k alpha}; zero when absent.
  double coeff(Rational k) const;

  /// Real-mode value sum coeff * spow(x - anchor, k alpha).
  double eval(double x, Alpha alpha) const;

  Expr to_expr() const;

  /// Recognizes sums of c * (x - anchor)^{k alpha} with x-free c (real-mode
  /// constants, alpha-constants). At alpha = 1, x and classical powers of
  /// (x - anchor) are accepted as well. Constant terms fit any anchor;
  /// `default_anchor` is used when the expression has no x-dependent term.
  static std::optional<AlphaPolynomial> from_expr(const Expr& e, Alpha alpha,
                                                  double default_anchor = 0.0);

  friend bool operator==(const AlphaPolynomial&, const AlphaPolynomial&) = default;

 private:
  double anchor_ = 0.0;
  std::vector<AlphaTerm> terms_;
};

/// Re-expands a polynomial with integer exponents about a new anchor under
/// fractal semantics: the base image sum C_k (x - c)^k with
/// spow(C_k, alpha) = coeff_k is re-expanded binomially and mapped back.
/// The base image, and therefore the fractal-mode value, is preserved.
AlphaPolynomial reanchor_fractal(const AlphaPolynomial& p, double new_anchor, Alpha alpha);

/// Base image of p at x: sum C_k (x - anchor)^k. Integer exponents only.
double base_image(const AlphaPolynomial& p, double x, Alpha alpha);

}  // namespace fracvex
