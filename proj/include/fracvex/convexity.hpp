#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracvex/alpha.hpp"
#include "fracvex/expr.hpp"

namespace fracvex {

/// Closed [lo, hi] or open (lo, hi) sampling interval.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool open = false;

  /// n equally spaced points; an open interval excludes the endpoints.
  std::vector<double> sample(int n) const;

  /// "lo,hi", "[lo,hi]" or "(lo,hi)".
  static Interval parse(const std::string& text);
  std::string to_string() const;
};

enum class Verdict { convex, strictly_convex, concave, nonconvex, inconclusive };

std::string to_string(Verdict v);

/// One sampled instance of the checked inequality. Unused coordinates are
/// NaN (lambda for derivative-based checks, x2 for pointwise checks).
struct ConvexityWitness {
  double x1 = 0.0;
  double lambda = 0.0;
  double x2 = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ConvexityReport {
  std::string check;
  Verdict verdict = Verdict::inconclusive;
  /// The reversed inequality held on the whole grid as well.
  bool concave = false;
  Mode mode = Mode::real;
  double alpha = 1.0;
  /// Violations of the convexity inequality, lexicographic by grid index,
  /// capped at `max_witnesses`.
  std::vector<ConvexityWitness> witnesses;
  long violations = 0;
  /// Smallest rhs - lhs seen (negative when violated).
  double min_margin = 0.0;
  std::string grid;
  double tolerance = 0.0;
  std::string reason;  ///< set when inconclusive
};

struct ChordOptions {
  Mode mode = Mode::real;
  int points = 50;   ///< sample points; all pairs i < j are checked
  int lambdas = 41;  ///< lambda in {0, 1/(n-1), ..., 1}
  bool strict = false;
  /// Violation threshold, relative to max(1, |lhs|, |rhs|).
  double tolerance = 1e-10;
  /// Strictness margin for the strict variant.
  double strict_margin = 1e-10;
  int max_witnesses = 10;
};

/// f(l x1 + (1-l) x2) <= l^a f(x1) + (1-l)^a f(x2) over a grid. In fractal
/// mode both sides are elements of R^alpha and are compared by base.
ConvexityReport chord_check(const Expr& e, const Interval& interval, Alpha alpha,
                            const ChordOptions& options = {});

struct SlopeReading {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Both readings of the three-point slope inequality
///   (f(x1)-f(x2))/(x1-x2)^a <= (f(x3)-f(x2))/(x3-x2)^a.
/// The fractal reading is absent for expressions without a base image.
struct SlopeDiag {
  SlopeReading real;
  std::optional<SlopeReading> fractal;
};

SlopeDiag slope_diag(const Expr& e, double x1, double x2, double x3, Alpha alpha,
                     double tolerance = 1e-12);

struct DerivativeCheckOptions {
  int points = 201;
  double tolerance = 1e-10;
  int max_witnesses = 10;
};

/// f^{(alpha)} non-decreasing on the sampled points.
ConvexityReport grad_monotone_check(const Expr& e, const Interval& interval, Alpha alpha,
                                    const DerivativeCheckOptions& options = {});

/// f(x2) >= f(x1) + f^{(alpha)}(x1)/Gamma(1+alpha) (x2-x1)^alpha for all sampled
/// pairs x1 != x2.
ConvexityReport support_line_check(const Expr& e, const Interval& interval, Alpha alpha,
                                   const DerivativeCheckOptions& options = {.points = 50});

/// f^{(2 alpha)} >= 0 on the sampled points (<= 0 gives concave).
ConvexityReport second_deriv_check(const Expr& e, const Interval& interval, Alpha alpha,
                                   const DerivativeCheckOptions& options = {});

struct CrossCheck {
  ConvexityReport chord;
  ConvexityReport gradient;
  ConvexityReport support;
  ConvexityReport second;
  bool agree = false;
  /// One line per disagreement, empty when all four agree.
  std::vector<std::string> findings;
};

/// Runs all four characterizations in real mode and compares their
/// convex / not-convex outcome.
CrossCheck cross_check(const Expr& e, const Interval& interval, Alpha alpha);

}  // namespace fracvex
