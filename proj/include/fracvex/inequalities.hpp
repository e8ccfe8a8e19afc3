#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracvex/alpha.hpp"
#include "fracvex/expr.hpp"

namespace fracvex {

struct InequalityWitness {
  std::string label;
  std::vector<std::pair<std::string, double>> values;
};

/// Verdict of one inequality instance lhs <= [mid <=] rhs.
///
/// `margins` are rhs - lhs for two-sided checks and (rhs - mid, mid - lhs)
/// for three-term chains. `tolerance` is the absolute slack actually applied:
/// the requested tolerance times max(1, |lhs|, |mid|, |rhs|).
/// satisfied <=> every margin >= -tolerance.
struct InequalityReport {
  std::string check;
  double alpha = 1.0;
  Mode mode = Mode::real;
  double lhs = 0.0;
  std::optional<double> mid;
  double rhs = 0.0;
  std::vector<double> margins;
  bool satisfied = false;
  double tolerance = 0.0;
  std::vector<InequalityWitness> witnesses;
  std::optional<std::string> grid;
};

inline constexpr double kDefaultTolerance = 1e-9;

/// f(sum l_i x_i) <= sum l_i^alpha f(x_i). In fractal mode the right-hand
/// sum is taken in R^alpha and reported by its displayed value.
InequalityReport jensen(const Expr& f, std::span<const double> xs,
                        std::span<const double> lambdas, Alpha alpha, Mode mode = Mode::real,
                        double tolerance = kDefaultTolerance);

/// f((a+b)/2) <= Gamma(1+alpha)/(b-a)^alpha aI_b f <= (f(a)+f(b))/2^alpha.
///
/// Real mode integrates symbolically and needs f anchored at a (an
/// alpha-polynomial in (x-a)^{k alpha}, plus E_alpha terms when a = 0).
/// Fractal mode works on the base image phi of any expression without
/// E_alpha: the middle term is spow(mean of phi over [a,b], alpha), with
/// the mean from adaptive Simpson quadrature (tolerance 1e-10).
InequalityReport hermite_hadamard(const Expr& f, double a, double b, Alpha alpha,
                                  Mode mode = Mode::real, double tolerance = kDefaultTolerance);

/// sum |a_k|^alpha |b_k|^alpha <= (sum |a_k|^{2alpha})^{1/2} (sum |b_k|^{2alpha})^{1/2}.
/// Zero entries are accepted and flagged as the limit case.
InequalityReport cauchy_schwarz(std::span<const double> as, std::span<const double> bs,
                                Alpha alpha, double tolerance = kDefaultTolerance);

/// S_r = ((a_1^{alpha r} + ... + a_n^{alpha r}) / n^alpha)^{1/r}.
/// Fractal mode sums in R^alpha, giving (classical power mean M_r)^alpha;
/// real mode evaluates the printed formula with real sums.
double power_mean(std::span<const double> as, double r, Alpha alpha, Mode mode = Mode::fractal);

/// S_s <= S_t for 0 < s < t or s < t < 0.
InequalityReport power_mean_compare(std::span<const double> as, double s, double t, Alpha alpha,
                                    Mode mode = Mode::fractal,
                                    double tolerance = kDefaultTolerance);

/// Worked scenarios "5.1", "5.2", "5.4", "5.5" with named numeric inputs
/// (5.1: a, b; 5.2: x, y; 5.4: a, b, c; 5.5: a, b, c, d). Missing inputs
/// take the documented defaults; d in 5.5 is solved from the constraint
/// when omitted.
InequalityReport run_example(const std::string& id, Alpha alpha,
                             const std::map<std::string, double>& inputs = {},
                             double tolerance = kDefaultTolerance);

}  // namespace fracvex
