#include "fracvex/expr.hpp"

#include <charconv>
#include <cmath>

#include "fracvex/error.hpp"
#include "fracvex/special.hpp"

namespace fracvex {

std::string to_string(Mode mode) { return mode == Mode::real ? "real" : "fractal"; }

Mode parse_mode(std::string_view text) {
  if (text == "real") return Mode::real;
  if (text == "fractal") return Mode::fractal;
  throw DomainError("unknown mode '" + std::string(text) + "' (expected real|fractal)");
}

Expr Expr::constant(double value) {
  return Expr(std::make_shared<const Node>(Node{Kind::constant, value, {}, nullptr, nullptr}));
}

Expr Expr::constant_alpha(double base) {
  return Expr(std::make_shared<const Node>(Node{Kind::constant_alpha, base, {}, nullptr, nullptr}));
}

Expr Expr::var() {
  return Expr(std::make_shared<const Node>(Node{Kind::var, 0.0, {}, nullptr, nullptr}));
}

Expr Expr::mittag_leffler() {
  return Expr(std::make_shared<const Node>(Node{Kind::mittag_leffler, 0.0, {}, nullptr, nullptr}));
}

Expr Expr::pow_alpha(Expr inner, Rational k) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::pow_alpha, 0.0, k, std::make_shared<const Expr>(std::move(inner)), nullptr}));
}

Expr Expr::pow_classical(Expr inner, Rational r) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::pow_classical, 0.0, r, std::make_shared<const Expr>(std::move(inner)), nullptr}));
}

Expr Expr::binary(Kind kind, Expr a, Expr b) {
  return Expr(std::make_shared<const Node>(Node{kind, 0.0, {},
                                                std::make_shared<const Expr>(std::move(a)),
                                                std::make_shared<const Expr>(std::move(b))}));
}

Expr operator+(Expr a, Expr b) { return Expr::binary(Expr::Kind::add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Expr::Kind::sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Expr::Kind::mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Expr::Kind::div, std::move(a), std::move(b)); }

Expr operator-(Expr a) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{
      Expr::Kind::neg, 0.0, {}, std::make_shared<const Expr>(std::move(a)), nullptr}));
}

bool Expr::is_binary() const {
  switch (kind()) {
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div:
      return true;
    default:
      return false;
  }
}

bool Expr::is_x_free() const {
  switch (kind()) {
    case Kind::var:
    case Kind::mittag_leffler:
      return false;
    case Kind::constant:
    case Kind::constant_alpha:
      return true;
    case Kind::neg:
    case Kind::pow_alpha:
    case Kind::pow_classical:
      return lhs().is_x_free();
    default:
      return lhs().is_x_free() && rhs().is_x_free();
  }
}

bool Expr::is_alpha_free() const {
  switch (kind()) {
    case Kind::constant_alpha:
    case Kind::pow_alpha:
    case Kind::mittag_leffler:
      return false;
    case Kind::constant:
    case Kind::var:
      return true;
    case Kind::neg:
    case Kind::pow_classical:
      return lhs().is_alpha_free();
    default:
      return lhs().is_alpha_free() && rhs().is_alpha_free();
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  using K = Expr::Kind;
  switch (a.kind()) {
    case K::constant:
    case K::constant_alpha:
      return a.number() == b.number();
    case K::var:
    case K::mittag_leffler:
      return true;
    case K::neg:
      return a.lhs() == b.lhs();
    case K::pow_alpha:
    case K::pow_classical:
      return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// ---------------------------------------------------------------------------
// Canonical printing

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Binding strength: sums < products < unary minus < powers < atoms.
int precedence(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::add:
    case K::sub:
      return 1;
    case K::mul:
    case K::div:
      return 2;
    case K::neg:
      return 3;
    case K::pow_alpha:
    case K::pow_classical:
    case K::constant_alpha:
      return 4;
    case K::constant:
      return e.number() < 0 || std::signbit(e.number()) ? 3 : 5;
    default:
      return 5;
  }
}

std::string alpha_exponent(Rational k) {
  if (k == Rational(1)) return "a";
  return "(" + k.to_string() + "a)";
}

std::string classical_exponent(Rational r) {
  if (r.is_integer() && r.num() >= 0) return r.to_string();
  return "(" + r.to_string() + ")";
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print_pow_base(const Expr& inner, std::string& out, bool literal_is_alpha_const) {
  // A bare non-negative literal followed by "^a" would read back as an
  // alpha-constant, so it is wrapped in that case.
  const bool literal = inner.kind() == Expr::Kind::constant && precedence(inner) == 5;
  const bool wrap = precedence(inner) < 5 || (literal && literal_is_alpha_const);
  print_wrapped(inner, wrap, out);
}

void print(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::constant:
      out += format_number(e.number());
      return;
    case K::constant_alpha:
      out += format_number(e.number());
      out += "^a";
      return;
    case K::var:
      out += 'x';
      return;
    case K::mittag_leffler:
      out += "E(x^a)";
      return;
    case K::neg: {
      out += '-';
      std::string inner;
      print(e.lhs(), inner);
      // "-2" would read back as a negative literal, "- -" is fine.
      const bool wrap = precedence(e.lhs()) < 3 ||
                        (!inner.empty() && (std::isdigit(static_cast<unsigned char>(inner[0])) ||
                                            inner[0] == '.'));
      if (wrap) out += '(';
      out += inner;
      if (wrap) out += ')';
      return;
    }
    case K::pow_alpha:
      print_pow_base(e.lhs(), out, e.exponent() == Rational(1));
      out += '^';
      out += alpha_exponent(e.exponent());
      return;
    case K::pow_classical:
      print_pow_base(e.lhs(), out, false);
      out += '^';
      out += classical_exponent(e.exponent());
      return;
    default: {
      const int p = precedence(e);
      print_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
      switch (e.kind()) {
        case K::add: out += " + "; break;
        case K::sub: out += " - "; break;
        case K::mul: out += '*'; break;
        default: out += '/'; break;
      }
      print_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
      return;
    }
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_fail(const std::string& what, const Expr& at) {
  throw DomainError(what + " in '" + at.to_string() + "'");
}

double pow_alpha_value(double inner, Rational k, Alpha alpha, const Expr& at) {
  if (inner == 0.0 && k.num() < 0) domain_fail("zero raised to a negative power", at);
  return spow(inner, k.times(alpha.value()));
}

double pow_classical_value(double inner, Rational r, const Expr& at) {
  if (inner < 0.0 && !r.is_integer()) domain_fail("negative base under non-integer power", at);
  if (inner == 0.0 && r.num() < 0) domain_fail("zero raised to a negative power", at);
  return rpow(inner, r);
}

}  // namespace

double eval_real(const Expr& e, double x, Alpha alpha) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::constant:
      return e.number();
    case K::constant_alpha:
      return spow(e.number(), alpha.value());
    case K::var:
      return x;
    case K::mittag_leffler:
      return mittag_leffler(alpha, x);
    case K::neg:
      return -eval_real(e.lhs(), x, alpha);
    case K::pow_alpha:
      return pow_alpha_value(eval_real(e.lhs(), x, alpha), e.exponent(), alpha, e);
    case K::pow_classical:
      return pow_classical_value(eval_real(e.lhs(), x, alpha), e.exponent(), e);
    case K::add:
      return eval_real(e.lhs(), x, alpha) + eval_real(e.rhs(), x, alpha);
    case K::sub:
      return eval_real(e.lhs(), x, alpha) - eval_real(e.rhs(), x, alpha);
    case K::mul:
      return eval_real(e.lhs(), x, alpha) * eval_real(e.rhs(), x, alpha);
    case K::div: {
      const double den = eval_real(e.rhs(), x, alpha);
      if (den == 0.0) domain_fail("division by zero", e);
      return eval_real(e.lhs(), x, alpha) / den;
    }
  }
  return 0.0;  // unreachable
}

FractalNumber eval_fractal(const Expr& e, double x, Alpha alpha) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::constant:
      return FractalNumber::from_value(e.number(), alpha);
    case K::constant_alpha:
      return {e.number(), alpha};
    case K::var:
      return FractalNumber::from_value(x, alpha);
    case K::mittag_leffler:
      throw DomainError("E(x^a) is unsupported in fractal mode");
    case K::neg:
      return -eval_fractal(e.lhs(), x, alpha);
    case K::pow_alpha: {
      // u^{k alpha} is the element with base spow(u, k).
      const double inner = eval_real(e.lhs(), x, alpha);
      if (inner == 0.0 && e.exponent().num() < 0) {
        domain_fail("zero raised to a negative power", e);
      }
      return {spow(inner, e.exponent().to_double()), alpha};
    }
    case K::pow_classical: {
      const FractalNumber inner = eval_fractal(e.lhs(), x, alpha);
      return {pow_classical_value(inner.base(), e.exponent(), e), alpha};
    }
    case K::add:
      return eval_fractal(e.lhs(), x, alpha) + eval_fractal(e.rhs(), x, alpha);
    case K::sub:
      return eval_fractal(e.lhs(), x, alpha) - eval_fractal(e.rhs(), x, alpha);
    case K::mul:
      return eval_fractal(e.lhs(), x, alpha) * eval_fractal(e.rhs(), x, alpha);
    case K::div: {
      const FractalNumber den = eval_fractal(e.rhs(), x, alpha);
      if (den.base() == 0.0) domain_fail("division by zero", e);
      return eval_fractal(e.lhs(), x, alpha) / den;
    }
  }
  return {0.0, alpha};  // unreachable
}

double eval(const Expr& e, double x, Alpha alpha, Mode mode) {
  return mode == Mode::real ? eval_real(e, x, alpha) : eval_fractal(e, x, alpha).display();
}

}  // namespace fracvex
