#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracvex/alpha.hpp"
#include "fracvex/alpha_polynomial.hpp"
#include "fracvex/expr.hpp"

namespace fracvex {

/// Constant folding plus a handful of identities (x*1, x+0, --x, u^0, ...).
/// Never merges alpha powers, so spow(u,a)*spow(u,a) keeps its sign.
Expr simplify(const Expr& e);

/// Ordinary derivative of an expression without alpha-powers of x.
/// Throws RuleSetError on a pow_alpha / E_alpha that depends on x.
Expr classical_diff(const Expr& e);

struct DiffResult {
  Expr derivative;
  int order = 0;  ///< number of d^alpha applications
};

/// Local fractional derivative d^{order*alpha}, computed symbolically:
///   linearity, product rule, d^a[c] = 0, d^a[E_a(x^a)] = E_a(x^a),
///   d^a[u^{ka}] = Gamma(1+ka)/Gamma(1+(k-1)a) * u^{(k-1)a} * (u')^a
/// with u alpha-free. At alpha = 1 alpha-free subtrees fall back to the
/// classical derivative. Throws RuleSetError outside this class.
DiffResult alpha_diff(const Expr& e, Alpha alpha, int order = 1);

/// Term-wise power rule on an anchored polynomial (k = 0 terms vanish).
AlphaPolynomial alpha_diff(const AlphaPolynomial& p, Alpha alpha);

/// c (x-c0)^{ka} -> c Gamma(1+ka)/Gamma(1+(k+1)a) (x-c0)^{(k+1)a}; F(c0) = 0.
AlphaPolynomial alpha_antiderivative(const AlphaPolynomial& p, Alpha alpha);

/// Local fractional integral aI_b of p, which must be anchored at a.
/// Returns F(b) with F the antiderivative above; b < a follows from the
/// signed power, and aI_a = 0.
double lfi(const AlphaPolynomial& p, double a, double b, Alpha alpha);

/// Integrand accepted by the expression-level integral: an anchored
/// polynomial plus an optional multiple of E_alpha(x^alpha) (anchor 0 only).
struct Integrand {
  AlphaPolynomial poly;
  double ml_coeff = 0.0;
};

/// Splits e into an Integrand anchored at `anchor`. Throws PreconditionError
/// "expression not anchored at lower limit" when that is impossible.
Integrand to_integrand(const Expr& e, double anchor, Alpha alpha);

double lfi(const Integrand& f, double a, double b, Alpha alpha);
double lfi(const Expr& e, double a, double b, Alpha alpha);

/// Fractal-mode integral: the element with base
/// (integral of the base image over [a,b]) / Gamma(1+alpha)^{1/alpha}, i.e.
/// displayed value spow(int phi, alpha) / Gamma(1+alpha). Additive over
/// adjacent intervals in R^alpha.
FractalNumber lfi_fractal(const Expr& e, double a, double b, Alpha alpha);

/// Adaptive Simpson quadrature of a classical integrand. Throws
/// PreconditionError when the evaluation budget runs out.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, long max_evals = 1000000);

struct TaylorResult {
  AlphaPolynomial polynomial;  ///< anchored at x0, terms k = 0..n
  double remainder_bound = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// T_n = sum_{k<=n} f^{(k alpha)}(x0)/Gamma(1+k alpha) (x-x0)^{k alpha}, with
/// remainder bound max |f^{((n+1)alpha)}(x)| / Gamma(1+(n+1)alpha) |x-x0|^{(n+1)alpha}
/// over `grid` equally spaced points of [lo, hi].
TaylorResult taylor_alpha(const Expr& e, double x0, int n, Alpha alpha, double lo, double hi,
                          int grid = 1001);

/// Gamma(1+alpha)(f(x0+h) - f(x0)) / h^alpha, the literal difference quotient.
double numeric_dalpha(const Expr& e, double x0, Alpha alpha, double h = 1e-6);

struct QuadratureDiag {
  std::vector<long> ns;
  std::vector<double> sums;
  double growth_exponent = 0.0;  ///< least-squares slope of log|sum| vs log N
};

/// Uniform-partition sums (1/Gamma(1+alpha)) sum f(t_j) (dt)^alpha.
QuadratureDiag riemann_diag(const Expr& e, double a, double b, Alpha alpha,
                            std::span<const long> ns);

}  // namespace fracvex
