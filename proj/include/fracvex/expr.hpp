#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "fracvex/alpha.hpp"
#include "fracvex/rational.hpp"

namespace fracvex {

/// Evaluation semantics. Real mode combines displayed values with ordinary
/// arithmetic; fractal mode combines elements of R^alpha through their bases.
enum class Mode { real, fractal };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Immutable expression tree for a function I -> R^alpha.
///
/// Node kinds:
///   constant      c
///   constant_alpha c^alpha            (displayed spow(c, alpha))
///   var           x
///   add/sub/mul/div/neg
///   pow_alpha     u^{k alpha}         (spow(u, k*alpha), k rational)
///   pow_classical u^r                 (ordinary power, alpha-free)
///   mittag_leffler E_alpha(x^alpha)
///
/// Copies share structure; equality is structural (constants compared
/// bit-exactly).
class Expr {
 public:
  enum class Kind {
    constant,
    constant_alpha,
    var,
    add,
    sub,
    mul,
    div,
    neg,
    pow_alpha,
    pow_classical,
    mittag_leffler
  };

  static Expr constant(double value);
  static Expr constant_alpha(double base);
  static Expr var();
  static Expr mittag_leffler();
  static Expr pow_alpha(Expr inner, Rational k);
  static Expr pow_classical(Expr inner, Rational r);

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);
  friend Expr operator-(Expr a);

  Kind kind() const { return node_->kind; }
  /// Constant value (constant) or base (constant_alpha).
  double number() const { return node_->number; }
  /// Exponent of pow_alpha / pow_classical.
  Rational exponent() const { return node_->exponent; }
  /// Left operand, or the only operand of neg / pow nodes.
  const Expr& lhs() const { return *node_->lhs; }
  const Expr& rhs() const { return *node_->rhs; }

  bool is_binary() const;
  bool is_constant(double c) const { return kind() == Kind::constant && number() == c; }

  /// No occurrence of x or E_alpha: the value does not depend on x.
  bool is_x_free() const;
  /// No alpha-dependent node (constant_alpha, pow_alpha, mittag_leffler).
  bool is_alpha_free() const;

  /// Canonical text; parse(e.to_string()) == e.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Kind kind;
    double number = 0.0;
    Rational exponent;
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr binary(Kind kind, Expr a, Expr b);

  std::shared_ptr<const Node> node_;
};

/// Parses the expression grammar:
///
///   expr     := term (("+"|"-") term)*
///   term     := factor (("*"|"/") factor)*
///   factor   := atom ("^" ("(" exponent ")" | "a" | integer))?
///   atom     := number | "x" | "(" expr ")" | "E" "(" "x" "^" "a" ")" | "-" factor
///   exponent := rational | rational "*"? "a" | "-"? "a"
///
/// A literal number raised to "a" is an alpha-constant. Throws ParseError.
Expr parse(std::string_view text);

/// Real-mode evaluation. Throws DomainError naming the offending
/// subexpression.
double eval_real(const Expr& e, double x, Alpha alpha);

/// Fractal-mode evaluation: the base of the result is the classical value of
/// the base-image expression. E_alpha has no base image and is rejected.
FractalNumber eval_fractal(const Expr& e, double x, Alpha alpha);

/// Display value in the requested mode.
double eval(const Expr& e, double x, Alpha alpha, Mode mode);

}  // namespace fracvex
