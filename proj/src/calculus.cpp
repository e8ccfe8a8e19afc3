#include "fracvex/calculus.hpp"

#include <cmath>
#include <numeric>

#include "fracvex/error.hpp"
#include "fracvex/special.hpp"

namespace fracvex {

using K = Expr::Kind;

namespace {

bool is_const(const Expr& e) { return e.kind() == K::constant; }
bool is_negative_const(const Expr& e) { return is_const(e) && e.number() < 0.0; }

Expr simplify_add(const Expr& a, const Expr& b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.number() + b.number());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (b.kind() == K::neg) return a - b.lhs();
  if (is_negative_const(b)) return a - Expr::constant(-b.number());
  if ((b.kind() == K::mul || b.kind() == K::div) && is_negative_const(b.lhs())) {
    const double c = -b.lhs().number();
    if (b.kind() == K::mul) return a - (c == 1.0 ? b.rhs() : Expr::constant(c) * b.rhs());
    return a - Expr::constant(c) / b.rhs();
  }
  return a + b;
}

Expr simplify_neg(const Expr& a);

Expr simplify_sub(const Expr& a, const Expr& b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.number() - b.number());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return simplify_neg(b);
  if (b.kind() == K::neg) return simplify_add(a, b.lhs());
  if ((b.kind() == K::mul || b.kind() == K::div) && is_negative_const(b.lhs())) {
    const double c = -b.lhs().number();
    if (b.kind() == K::mul) return a + (c == 1.0 ? b.rhs() : Expr::constant(c) * b.rhs());
    return a + Expr::constant(c) / b.rhs();
  }
  return a - b;
}

Expr simplify_neg(const Expr& a) {
  if (is_const(a)) return Expr::constant(-a.number());
  if (a.kind() == K::neg) return a.lhs();
  if (a.kind() == K::mul && is_const(a.lhs())) {
    const double c = -a.lhs().number();
    return c == 1.0 ? a.rhs() : Expr::constant(c) * a.rhs();
  }
  if (a.kind() == K::div && is_const(a.lhs())) return Expr::constant(-a.lhs().number()) / a.rhs();
  return -a;
}

Expr simplify_mul(const Expr& a, const Expr& b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.number() * b.number());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return simplify_neg(b);
  if (b.is_constant(-1.0)) return simplify_neg(a);
  if (is_const(b)) return simplify_mul(b, a);
  if (is_const(a)) {
    if (b.kind() == K::mul && is_const(b.lhs())) {
      return simplify_mul(Expr::constant(a.number() * b.lhs().number()), b.rhs());
    }
    if (b.kind() == K::div && is_const(b.lhs())) {
      return Expr::constant(a.number() * b.lhs().number()) / b.rhs();
    }
    if (b.kind() == K::neg) return simplify_mul(Expr::constant(-a.number()), b.lhs());
  }
  if (a.kind() == K::mul && is_const(a.lhs())) {
    return simplify_mul(a.lhs(), simplify_mul(a.rhs(), b));
  }
  return a * b;
}

Expr simplify_div(const Expr& a, const Expr& b) {
  if (is_const(a) && is_const(b) && b.number() != 0.0) {
    return Expr::constant(a.number() / b.number());
  }
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.kind() == K::mul && is_const(a.lhs()) && is_const(b) && b.number() != 0.0) {
    return simplify_mul(Expr::constant(a.lhs().number() / b.number()), a.rhs());
  }
  return a / b;
}

Expr simplify_pow_alpha(const Expr& u, Rational k) {
  if (k.num() == 0) return Expr::constant(1.0);
  if (is_const(u) && k == Rational(1)) {
    if (u.number() == 0.0 || u.number() == 1.0) return u;
    return Expr::constant_alpha(u.number());
  }
  return Expr::pow_alpha(u, k);
}

Expr simplify_pow_classical(const Expr& u, Rational r) {
  if (r.num() == 0) return Expr::constant(1.0);
  if (r == Rational(1)) return u;
  if (is_const(u) && r.is_integer() && !(u.number() == 0.0 && r.num() < 0)) {
    return Expr::constant(rpow(u.number(), r));
  }
  if (u.kind() == K::pow_classical && u.exponent().is_integer() && r.is_integer()) {
    return simplify_pow_classical(u.lhs(), u.exponent() * r);
  }
  return Expr::pow_classical(u, r);
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case K::constant:
    case K::var:
    case K::mittag_leffler:
      return e;
    case K::constant_alpha:
      if (e.number() == 0.0 || e.number() == 1.0) return Expr::constant(e.number());
      return e;
    case K::neg:
      return simplify_neg(simplify(e.lhs()));
    case K::pow_alpha:
      return simplify_pow_alpha(simplify(e.lhs()), e.exponent());
    case K::pow_classical:
      return simplify_pow_classical(simplify(e.lhs()), e.exponent());
    case K::add:
      return simplify_add(simplify(e.lhs()), simplify(e.rhs()));
    case K::sub:
      return simplify_sub(simplify(e.lhs()), simplify(e.rhs()));
    case K::mul:
      return simplify_mul(simplify(e.lhs()), simplify(e.rhs()));
    case K::div:
      return simplify_div(simplify(e.lhs()), simplify(e.rhs()));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Classical derivative

namespace {

Expr cdiff(const Expr& e) {
  if (e.is_x_free()) return Expr::constant(0.0);
  switch (e.kind()) {
    case K::var:
      return Expr::constant(1.0);
    case K::add:
      return simplify_add(cdiff(e.lhs()), cdiff(e.rhs()));
    case K::sub:
      return simplify_sub(cdiff(e.lhs()), cdiff(e.rhs()));
    case K::neg:
      return simplify_neg(cdiff(e.lhs()));
    case K::mul:
      return simplify_add(simplify_mul(cdiff(e.lhs()), e.rhs()),
                          simplify_mul(e.lhs(), cdiff(e.rhs())));
    case K::div: {
      const Expr& f = e.lhs();
      const Expr& g = e.rhs();
      if (g.is_x_free()) return simplify_div(cdiff(f), g);
      if (f.is_x_free()) {
        // c/u^r -> -r c u' / u^{r+1}
        const Expr c = simplify(f);
        Expr u = g;
        Rational r(1);
        if (g.kind() == K::pow_classical) {
          u = g.lhs();
          r = g.exponent();
        }
        const Expr scale = simplify_mul(Expr::constant(-r.to_double()), c);
        return simplify_div(simplify_mul(scale, cdiff(u)),
                            simplify_pow_classical(u, r + Rational(1)));
      }
      return simplify_div(simplify_sub(simplify_mul(cdiff(f), g), simplify_mul(f, cdiff(g))),
                          simplify_pow_classical(g, Rational(2)));
    }
    case K::pow_classical: {
      const Rational r = e.exponent();
      const Expr du = cdiff(e.lhs());
      return simplify_mul(simplify_mul(Expr::constant(r.to_double()),
                                       simplify_pow_classical(e.lhs(), r - Rational(1))),
                          du);
    }
    case K::pow_alpha:
      throw RuleSetError("not classically differentiable: '" + e.to_string() + "'");
    case K::mittag_leffler:
      throw RuleSetError("not classically differentiable: 'E(x^a)'");
    default:
      break;
  }
  return Expr::constant(0.0);
}

// True when u may serve as the inner function of the chain rule.
bool chain_inner_ok(const Expr& u) {
  switch (u.kind()) {
    case K::mittag_leffler:
      return false;
    case K::pow_alpha:
      return u.is_x_free();
    case K::constant:
    case K::constant_alpha:
    case K::var:
      return true;
    case K::neg:
    case K::pow_classical:
      return chain_inner_ok(u.lhs());
    default:
      return chain_inner_ok(u.lhs()) && chain_inner_ok(u.rhs());
  }
}

Expr adiff(const Expr& e, Alpha alpha) {
  if (e.is_x_free()) return Expr::constant(0.0);
  if (alpha.is_one() && e.is_alpha_free()) return cdiff(e);
  switch (e.kind()) {
    case K::mittag_leffler:
      return e;
    case K::add:
      return simplify_add(adiff(e.lhs(), alpha), adiff(e.rhs(), alpha));
    case K::sub:
      return simplify_sub(adiff(e.lhs(), alpha), adiff(e.rhs(), alpha));
    case K::neg:
      return simplify_neg(adiff(e.lhs(), alpha));
    case K::mul: {
      if (e.lhs().is_x_free()) return simplify_mul(e.lhs(), adiff(e.rhs(), alpha));
      if (e.rhs().is_x_free()) return simplify_mul(adiff(e.lhs(), alpha), e.rhs());
      return simplify_add(simplify_mul(adiff(e.lhs(), alpha), e.rhs()),
                          simplify_mul(e.lhs(), adiff(e.rhs(), alpha)));
    }
    case K::div: {
      const Expr& g = e.rhs();
      if (g.is_x_free()) return simplify_div(adiff(e.lhs(), alpha), g);
      if (g.kind() == K::pow_alpha) {
        return adiff(simplify_mul(e.lhs(), Expr::pow_alpha(g.lhs(), -g.exponent())), alpha);
      }
      throw RuleSetError("quotient with non-constant denominator '" + e.to_string() + "'");
    }
    case K::pow_alpha: {
      const Expr& u = e.lhs();
      if (!chain_inner_ok(u)) {
        throw RuleSetError("unsupported composition '" + e.to_string() + "'");
      }
      const Rational k = e.exponent();
      const Expr du = cdiff(u);
      const Expr factor = Expr::constant(gamma_ratio(k, alpha));
      return simplify_mul(simplify_mul(factor, simplify_pow_alpha(u, k - Rational(1))),
                          simplify_pow_alpha(simplify(du), Rational(1)));
    }
    default:
      break;
  }
  throw RuleSetError("alpha-free non-constant term '" + e.to_string() + "' at alpha < 1");
}

}  // namespace

Expr classical_diff(const Expr& e) { return simplify(cdiff(simplify(e))); }

DiffResult alpha_diff(const Expr& e, Alpha alpha, int order) {
  if (order < 0) throw PreconditionError("derivative order must be non-negative");
  Expr current = simplify(e);
  for (int i = 0; i < order; ++i) current = simplify(adiff(current, alpha));
  return {current, order};
}

AlphaPolynomial alpha_diff(const AlphaPolynomial& p, Alpha alpha) {
  std::vector<AlphaTerm> terms;
  for (const auto& t : p.terms()) {
    if (t.k.num() == 0) continue;
    terms.push_back({t.k - Rational(1), t.coeff * gamma_ratio(t.k, alpha)});
  }
  return AlphaPolynomial(p.anchor(), std::move(terms));
}

AlphaPolynomial alpha_antiderivative(const AlphaPolynomial& p, Alpha alpha) {
  std::vector<AlphaTerm> terms;
  for (const auto& t : p.terms()) {
    const Rational up = t.k + Rational(1);
    terms.push_back({up, t.coeff / gamma_ratio(up, alpha)});
  }
  return AlphaPolynomial(p.anchor(), std::move(terms));
}

double lfi(const AlphaPolynomial& p, double a, double b, Alpha alpha) {
  if (a == b) return 0.0;
  if (p.anchor() != a) throw PreconditionError("expression not anchored at lower limit");
  return alpha_antiderivative(p, alpha).eval(b, alpha);
}

Integrand to_integrand(const Expr& e, double anchor, Alpha alpha) {
  const Expr s = simplify(e);
  // Peel off additive multiples of E_alpha(x^alpha).
  double ml = 0.0;
  std::vector<std::pair<Expr, double>> stack{{s, 1.0}};
  std::optional<Expr> rest;
  auto push_rest = [&](const Expr& part, double sign) {
    const Expr signed_part = sign < 0 ? -part : part;
    rest = rest ? *rest + signed_part : signed_part;
  };
  while (!stack.empty()) {
    auto [cur, sign] = stack.back();
    stack.pop_back();
    if (cur.kind() == K::add || cur.kind() == K::sub) {
      stack.push_back({cur.rhs(), cur.kind() == K::sub ? -sign : sign});
      stack.push_back({cur.lhs(), sign});
    } else if (cur.kind() == K::mittag_leffler) {
      ml += sign;
    } else if (cur.kind() == K::mul && cur.rhs().kind() == K::mittag_leffler &&
               cur.lhs().is_x_free()) {
      ml += sign * eval_real(cur.lhs(), 0.0, alpha);
    } else if (cur.kind() == K::neg && cur.lhs().kind() == K::mittag_leffler) {
      ml -= sign;
    } else {
      push_rest(cur, sign);
    }
  }
  Integrand out;
  out.ml_coeff = ml;
  if (ml != 0.0 && anchor != 0.0) {
    throw PreconditionError("expression not anchored at lower limit");
  }
  if (!rest) {
    out.poly = AlphaPolynomial(anchor, {});
    return out;
  }
  auto poly = AlphaPolynomial::from_expr(*rest, alpha, anchor);
  if (!poly || poly->anchor() != anchor) {
    throw PreconditionError("expression not anchored at lower limit");
  }
  out.poly = *poly;
  return out;
}

double lfi(const Integrand& f, double a, double b, Alpha alpha) {
  if (a == b) return 0.0;
  double value = lfi(f.poly, a, b, alpha);
  if (f.ml_coeff != 0.0) {
    if (a != 0.0) throw PreconditionError("expression not anchored at lower limit");
    // The antiderivative of E_a(x^a) vanishing at 0 is E_a(x^a) - 1.
    value += f.ml_coeff * (mittag_leffler(alpha, b) - 1.0);
  }
  return value;
}

double lfi(const Expr& e, double a, double b, Alpha alpha) {
  if (a == b) return 0.0;
  return lfi(to_integrand(e, a, alpha), a, b, alpha);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, long max_evals) {
  long evals = 0;
  auto call = [&](double x) {
    if (++evals > max_evals) throw PreconditionError("quadrature evaluation budget exhausted");
    return f(x);
  };
  std::function<double(double, double, double, double, double, double, double, int)> recurse =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double tol,
          int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = call(lm);
    const double frm = call(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return recurse(lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
           recurse(mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
  };
  if (a == b) return 0.0;
  const double fa = call(a);
  const double fb = call(b);
  const double fm = call(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return recurse(a, b, fa, fm, fb, whole, abs_tol, 50);
}

FractalNumber lfi_fractal(const Expr& e, double a, double b, Alpha alpha) {
  const double integral =
      adaptive_simpson([&](double x) { return eval_fractal(e, x, alpha).base(); }, a, b);
  const double scale = std::pow(gamma1p_alpha(Rational(1), alpha), 1.0 / alpha.value());
  return {integral / scale, alpha};
}

TaylorResult taylor_alpha(const Expr& e, double x0, int n, Alpha alpha, double lo, double hi,
                          int grid) {
  if (n < 0) throw PreconditionError("Taylor order must be non-negative");
  if (!(lo <= x0 && x0 <= hi)) throw PreconditionError("expansion point outside the interval");
  if (grid < 2) throw PreconditionError("remainder grid needs at least 2 points");
  std::vector<AlphaTerm> terms;
  Expr derivative = simplify(e);
  for (int k = 0; k <= n; ++k) {
    const double value = eval_real(derivative, x0, alpha);
    if (!std::isfinite(value)) {
      throw DomainError("non-finite derivative of order " + std::to_string(k) + " at x0");
    }
    terms.push_back({Rational(k), value / gamma1p_alpha(Rational(k), alpha)});
    derivative = alpha_diff(derivative, alpha).derivative;
  }
  TaylorResult out{AlphaPolynomial(x0, std::move(terms)), 0.0, lo, hi};
  if (derivative.is_constant(0.0)) return out;
  const Rational next(n + 1);
  const double norm = gamma1p_alpha(next, alpha);
  const double power = next.times(alpha.value());
  double bound = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * i / (grid - 1);
    if (x == x0) continue;
    const double d = eval_real(derivative, x, alpha);
    bound = std::max(bound, std::fabs(d) / norm * std::pow(std::fabs(x - x0), power));
  }
  out.remainder_bound = bound;
  return out;
}

double numeric_dalpha(const Expr& e, double x0, Alpha alpha, double h) {
  if (!(h > 0.0)) throw PreconditionError("step h must be positive");
  const double diff = eval_real(e, x0 + h, alpha) - eval_real(e, x0, alpha);
  return gamma1p_alpha(Rational(1), alpha) * diff / std::pow(h, alpha.value());
}

QuadratureDiag riemann_diag(const Expr& e, double a, double b, Alpha alpha,
                            std::span<const long> ns) {
  QuadratureDiag out;
  const double norm = gamma1p_alpha(Rational(1), alpha);
  for (long n : ns) {
    if (n <= 0) throw PreconditionError("partition count must be positive");
    const double dt = (b - a) / static_cast<double>(n);
    const double weight = spow(dt, alpha.value());
    double sum = 0.0;
    for (long j = 0; j < n; ++j) sum += eval_real(e, a + dt * static_cast<double>(j), alpha);
    out.ns.push_back(n);
    out.sums.push_back(sum * weight / norm);
  }
  if (out.ns.size() >= 2) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < out.ns.size(); ++i) {
      lx.push_back(std::log(static_cast<double>(out.ns[i])));
      ly.push_back(std::log(std::fabs(out.sums[i])));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    out.growth_exponent = sxy / sxx;
  } else {
    out.growth_exponent = std::nan("");
  }
  return out;
}

}  // namespace fracvex
