#include "fracvex/alpha_polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "fracvex/error.hpp"

namespace fracvex {

AlphaPolynomial::AlphaPolynomial(double anchor, std::vector<AlphaTerm> terms) : anchor_(anchor) {
  if (!std::isfinite(anchor)) throw DomainError("non-finite anchor");
  std::stable_sort(terms.begin(), terms.end(),
                   [](const AlphaTerm& a, const AlphaTerm& b) { return a.k < b.k; });
  for (const auto& t : terms) {
    if (t.k < Rational(0)) throw DomainError("negative exponent multiplier " + t.k.to_string());
    if (!std::isfinite(t.coeff)) throw DomainError("non-finite coefficient");
    if (!terms_.empty() && terms_.back().k == t.k) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
}

double AlphaPolynomial::coeff(Rational k) const {
  for (const auto& t : terms_) {
    if (t.k == k) return t.coeff;
  }
  return 0.0;
}

double AlphaPolynomial::eval(double x, Alpha alpha) const {
  const double u = x - anchor_;
  double sum = 0.0;
  for (const auto& t : terms_) {
    sum += t.k.num() == 0 ? t.coeff : t.coeff * spow(u, t.k.times(alpha.value()));
  }
  return sum;
}

Expr AlphaPolynomial::to_expr() const {
  const Expr shifted = anchor_ == 0.0 ? Expr::var() : Expr::var() - Expr::constant(anchor_);
  std::optional<Expr> out;
  for (const auto& t : terms_) {
    const bool negative = std::signbit(t.coeff) && out.has_value();
    const double c = negative ? -t.coeff : t.coeff;
    Expr term = Expr::constant(c);
    if (t.k.num() != 0) {
      const Expr power = Expr::pow_alpha(shifted, t.k);
      term = c == 1.0 ? power : Expr::constant(c) * power;
    }
    if (!out) {
      out = term;
    } else {
      out = negative ? *out - term : *out + term;
    }
  }
  return out.value_or(Expr::constant(0.0));
}

namespace {

struct Collected {
  Rational k;
  double coeff;
  std::optional<double> anchor;  // empty for constant terms
};

// Matches x (anchor 0), x - c (anchor c), x + c (anchor -c).
std::optional<double> linear_anchor(const Expr& e, Alpha alpha) {
  using K = Expr::Kind;
  if (e.kind() == K::var) return 0.0;
  if ((e.kind() == K::sub || e.kind() == K::add) && e.lhs().kind() == K::var &&
      e.rhs().is_x_free()) {
    const double c = eval_real(e.rhs(), 0.0, alpha);
    return e.kind() == K::sub ? c : -c;
  }
  return std::nullopt;
}

bool collect(const Expr& e, double scale, Alpha alpha, std::vector<Collected>& out) {
  using K = Expr::Kind;
  if (e.is_x_free()) {
    out.push_back({Rational(0), scale * eval_real(e, 0.0, alpha), std::nullopt});
    return true;
  }
  switch (e.kind()) {
    case K::add:
      return collect(e.lhs(), scale, alpha, out) && collect(e.rhs(), scale, alpha, out);
    case K::sub:
      return collect(e.lhs(), scale, alpha, out) && collect(e.rhs(), -scale, alpha, out);
    case K::neg:
      return collect(e.lhs(), -scale, alpha, out);
    case K::mul:
      if (e.lhs().is_x_free()) return collect(e.rhs(), scale * eval_real(e.lhs(), 0.0, alpha), alpha, out);
      if (e.rhs().is_x_free()) return collect(e.lhs(), scale * eval_real(e.rhs(), 0.0, alpha), alpha, out);
      return false;
    case K::div:
      if (e.rhs().is_x_free()) {
        const double den = eval_real(e.rhs(), 0.0, alpha);
        if (den == 0.0) return false;
        return collect(e.lhs(), scale / den, alpha, out);
      }
      return false;
    case K::pow_alpha:
    case K::pow_classical: {
      const auto anchor = linear_anchor(e.lhs(), alpha);
      if (!anchor) return false;
      Rational k = e.exponent();
      if (e.kind() == K::pow_classical) {
        if (!alpha.is_one()) return false;
      }
      if (k < Rational(0)) return false;
      out.push_back({k, scale, anchor});
      return true;
    }
    case K::var:
      if (!alpha.is_one()) return false;
      out.push_back({Rational(1), scale, 0.0});
      return true;
    default:
      return false;
  }
}

}  // namespace

std::optional<AlphaPolynomial> AlphaPolynomial::from_expr(const Expr& e, Alpha alpha,
                                                          double default_anchor) {
  std::vector<Collected> collected;
  try {
    if (!collect(e, 1.0, alpha, collected)) return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  }
  std::optional<double> anchor;
  std::vector<AlphaTerm> terms;
  for (const auto& c : collected) {
    if (c.anchor && c.k.num() != 0) {
      if (anchor && *anchor != *c.anchor) return std::nullopt;
      anchor = c.anchor;
    }
    terms.push_back({c.k, c.coeff});
  }
  return AlphaPolynomial(anchor.value_or(default_anchor), std::move(terms));
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<double> base_coefficients(const AlphaPolynomial& p, Alpha alpha) {
  int degree = 0;
  for (const auto& t : p.terms()) {
    if (!t.k.is_integer()) throw DomainError("base image requires integer exponent multipliers");
    degree = std::max(degree, static_cast<int>(t.k.num()));
  }
  std::vector<double> base(static_cast<std::size_t>(degree) + 1, 0.0);
  for (const auto& t : p.terms()) {
    base[static_cast<std::size_t>(t.k.num())] = spow(t.coeff, 1.0 / alpha.value());
  }
  return base;
}

}  // namespace

double base_image(const AlphaPolynomial& p, double x, Alpha alpha) {
  const auto base = base_coefficients(p, alpha);
  const double u = x - p.anchor();
  double v = 0.0;
  for (std::size_t i = base.size(); i-- > 0;) v = v * u + base[i];
  return v;
}

AlphaPolynomial reanchor_fractal(const AlphaPolynomial& p, double new_anchor, Alpha alpha) {
  const auto base = base_coefficients(p, alpha);
  const double shift = new_anchor - p.anchor();
  // sum_k C_k (y + shift)^k with y = x - new_anchor.
  std::vector<double> shifted(base.size(), 0.0);
  for (std::size_t k = 0; k < base.size(); ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      shifted[j] += base[k] * binomial(static_cast<int>(k), static_cast<int>(j)) *
                    std::pow(shift, static_cast<double>(k - j));
    }
  }
  std::vector<AlphaTerm> terms;
  for (std::size_t j = 0; j < shifted.size(); ++j) {
    terms.push_back({Rational(static_cast<std::int64_t>(j)), spow(shifted[j], alpha.value())});
  }
  return AlphaPolynomial(new_anchor, std::move(terms));
}

}  // namespace fracvex
