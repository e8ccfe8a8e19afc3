#include <cctype>
#include <charconv>
#include <sstream>

#include "fracvex/error.hpp"
#include "fracvex/expr.hpp"

namespace fracvex {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail({"+", "-", "*", "/", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string(1, c)});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::ostringstream os;
    os << "syntax error at offset " << pos_ << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      os << (i ? ", " : "") << "'" << expected[i] << "'";
    }
    if (pos_ < text_.size()) {
      os << ", found '" << text_[pos_] << "'";
    } else {
      os << ", found end of input";
    }
    throw ParseError(os.str(), pos_, std::move(expected));
  }

  [[noreturn]] void fail_exponent(std::size_t at) {
    std::ostringstream os;
    os << "exponent not rational at offset " << at;
    throw ParseError(os.str(), at, {"rational exponent"});
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (accept('+')) {
        e = e + parse_term();
      } else if (accept('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (accept('*')) {
        e = e * parse_factor();
      } else if (accept('/')) {
        e = e / parse_factor();
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    bool literal = false;
    Expr base = parse_atom(literal);
    if (!accept('^')) return base;
    return parse_power(std::move(base), literal);
  }

  static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

  Expr parse_atom(bool& literal) {
    const char c = peek();
    if (is_digit(c) || c == '.') {
      literal = true;
      return Expr::constant(read_number());
    }
    if (c == '-') {
      ++pos_;
      // "-" directly followed by a literal is a negative literal.
      if (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.')) {
        literal = true;
        return Expr::constant(-read_number());
      }
      return -parse_factor();
    }
    if (c == 'x') {
      ++pos_;
      return Expr::var();
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (c == 'E') {
      ++pos_;
      expect('(');
      expect('x');
      expect('^');
      expect('a');
      expect(')');
      return Expr::mittag_leffler();
    }
    fail({"number", "x", "(", "E", "-"});
  }

  double read_number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail({"number"});
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  std::int64_t read_integer() {
    skip_ws();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || v < 0) fail({"integer"});
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  Expr parse_power(Expr base, bool literal) {
    const char c = peek();
    if (c == 'a') {
      ++pos_;
      return make_alpha_power(std::move(base), Rational(1), literal);
    }
    if (is_digit(c)) {
      const std::size_t at = pos_;
      const std::int64_t n = read_integer();
      if (pos_ < text_.size() && text_[pos_] == '.') fail_exponent(at);
      return Expr::pow_classical(std::move(base), Rational(n));
    }
    if (c != '(') fail({"(", "a", "integer"});
    ++pos_;
    const std::size_t at = pos_;
    const bool negative = accept('-');
    Rational k(1);
    bool has_number = false;
    if (is_digit(peek())) {
      const std::int64_t num = read_integer();
      std::int64_t den = 1;
      if (pos_ < text_.size() && text_[pos_] == '.') fail_exponent(at);
      if (accept('/')) {
        den = read_integer();
        if (den == 0) fail_exponent(at);
        if (pos_ < text_.size() && text_[pos_] == '.') fail_exponent(at);
      }
      k = Rational(num, den);
      has_number = true;
    } else if (peek() == '.') {
      fail_exponent(at);
    }
    if (negative) k = -k;
    bool alpha = false;
    if (has_number && accept('*')) {
      expect('a');
      alpha = true;
    } else if (accept('a')) {
      alpha = true;
    }
    if (!has_number && !alpha) fail({"rational", "a"});
    expect(')');
    if (alpha) return make_alpha_power(std::move(base), k, literal);
    return Expr::pow_classical(std::move(base), k);
  }

  static Expr make_alpha_power(Expr base, Rational k, bool literal) {
    if (literal && k == Rational(1)) return Expr::constant_alpha(base.number());
    return Expr::pow_alpha(std::move(base), k);
  }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace fracvex
