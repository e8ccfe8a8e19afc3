#include "fracvex/convexity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracvex/calculus.hpp"
#include "fracvex/error.hpp"
#include "fracvex/special.hpp"

namespace fracvex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string short_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

double scaled_tol(double tol, double a, double b) {
  return tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Accumulates lhs <= rhs comparisons for one report.
class Tally {
 public:
  Tally(ConvexityReport& report, double tol, int max_witnesses)
      : report_(report), tol_(tol), max_witnesses_(max_witnesses) {
    report_.min_margin = std::numeric_limits<double>::infinity();
  }

  // cmp_lhs/cmp_rhs decide, lhs/rhs are what the witness shows.
  void add(double cmp_lhs, double cmp_rhs, ConvexityWitness w) {
    const double t = scaled_tol(tol_, cmp_lhs, cmp_rhs);
    report_.min_margin = std::min(report_.min_margin, w.rhs - w.lhs);
    if (cmp_lhs > cmp_rhs + t) {
      ++report_.violations;
      if (static_cast<int>(report_.witnesses.size()) < max_witnesses_) {
        report_.witnesses.push_back(w);
      }
    }
    if (cmp_lhs < cmp_rhs - t) reversed_ok_ = false;
  }

  /// `name_concave` reports a violated but reversed-consistent grid as
  /// concave instead of nonconvex.
  void finish(bool name_concave = false) {
    report_.concave = reversed_ok_;
    if (report_.violations == 0) {
      report_.verdict = Verdict::convex;
    } else {
      report_.verdict = reversed_ok_ && name_concave ? Verdict::concave : Verdict::nonconvex;
    }
    if (!std::isfinite(report_.min_margin)) report_.min_margin = 0.0;
  }

 private:
  ConvexityReport& report_;
  double tol_;
  int max_witnesses_;
  bool reversed_ok_ = true;
};

ConvexityReport base_report(std::string check, Mode mode, Alpha alpha, double tol) {
  ConvexityReport r;
  r.check = std::move(check);
  r.mode = mode;
  r.alpha = alpha.value();
  r.tolerance = tol;
  return r;
}

void mark_inconclusive(ConvexityReport& r, const std::string& reason) {
  r.verdict = Verdict::inconclusive;
  r.concave = false;
  r.reason = reason;
}

}  // namespace

std::vector<double> Interval::sample(int n) const {
  if (n <= 0) throw PreconditionError("sample count must be positive");
  if (!(lo < hi)) throw PreconditionError("interval requires lo < hi");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    xs.push_back(0.5 * (lo + hi));
    return xs;
  }
  for (int i = 0; i < n; ++i) {
    if (open) {
      xs.push_back(lo + (hi - lo) * (i + 1) / (n + 1));
    } else {
      xs.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
    }
  }
  return xs;
}

Interval Interval::parse(const std::string& text) {
  std::string_view s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  Interval out;
  if (!s.empty() && (s.front() == '(' || s.front() == '[')) {
    out.open = s.front() == '(';
    s.remove_prefix(1);
    if (s.empty() || (s.back() != ')' && s.back() != ']')) {
      throw DomainError("unbalanced interval '" + text + "'");
    }
    out.open = out.open || s.back() == ')';
    s.remove_suffix(1);
  }
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw DomainError("interval needs 'lo,hi': '" + text + "'");
  out.lo = parse_double(s.substr(0, comma));
  out.hi = parse_double(s.substr(comma + 1));
  if (!(out.lo < out.hi)) throw DomainError("interval requires lo < hi: '" + text + "'");
  return out;
}

std::string Interval::to_string() const {
  return std::string(open ? "(" : "[") + short_number(lo) + "," + short_number(hi) +
         (open ? ")" : "]");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::convex: return "convex";
    case Verdict::strictly_convex: return "strictly_convex";
    case Verdict::concave: return "concave";
    case Verdict::nonconvex: return "nonconvex";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ConvexityReport chord_check(const Expr& e, const Interval& interval, Alpha alpha,
                            const ChordOptions& options) {
  ConvexityReport report = base_report(options.strict ? "chord-strict" : "chord", options.mode,
                                       alpha, options.tolerance);
  if (options.points < 2 || options.lambdas < 2) {
    throw PreconditionError("chord grid needs at least 2 points and 2 lambdas");
  }
  const auto xs = interval.sample(options.points);
  {
    std::ostringstream os;
    os << options.points << " points (" << xs.size() * (xs.size() - 1) / 2 << " pairs) x "
       << options.lambdas << " lambdas on " << interval.to_string();
    report.grid = os.str();
  }
  const double a = alpha.value();
  Tally tally(report, options.tolerance, options.max_witnesses);
  long ties = 0;
  try {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        for (int l = 0; l < options.lambdas; ++l) {
          const double lambda =
              l == options.lambdas - 1 ? 1.0 : static_cast<double>(l) / (options.lambdas - 1);
          if (options.strict && (lambda == 0.0 || lambda == 1.0)) continue;
          const double mix = lambda * xs[i] + (1.0 - lambda) * xs[j];
          double lhs = 0.0;
          double rhs = 0.0;
          double cmp_lhs = 0.0;
          double cmp_rhs = 0.0;
          if (options.mode == Mode::real) {
            lhs = eval_real(e, mix, alpha);
            rhs = std::pow(lambda, a) * eval_real(e, xs[i], alpha) +
                  std::pow(1.0 - lambda, a) * eval_real(e, xs[j], alpha);
            cmp_lhs = lhs;
            cmp_rhs = rhs;
          } else {
            const FractalNumber left = eval_fractal(e, mix, alpha);
            const FractalNumber right = FractalNumber(lambda, alpha) * eval_fractal(e, xs[i], alpha) +
                                        FractalNumber(1.0 - lambda, alpha) * eval_fractal(e, xs[j], alpha);
            lhs = left.display();
            rhs = right.display();
            cmp_lhs = left.base();
            cmp_rhs = right.base();
          }
          tally.add(cmp_lhs, cmp_rhs, {xs[i], lambda, xs[j], lhs, rhs});
          if (options.strict && cmp_lhs >= cmp_rhs - options.strict_margin &&
              cmp_lhs <= cmp_rhs + scaled_tol(options.tolerance, cmp_lhs, cmp_rhs)) {
            ++ties;
          }
        }
      }
    }
  } catch (const Error& err) {
    mark_inconclusive(report, err.what());
    return report;
  }
  tally.finish();
  if (options.strict && report.verdict == Verdict::convex) {
    if (ties == 0) {
      report.verdict = Verdict::strictly_convex;
    } else {
      std::ostringstream os;
      os << ties << " comparisons tie within the strictness margin " << options.strict_margin;
      mark_inconclusive(report, os.str());
    }
  }
  return report;
}

SlopeDiag slope_diag(const Expr& e, double x1, double x2, double x3, Alpha alpha,
                     double tolerance) {
  if (!(x1 < x2 && x2 < x3)) throw PreconditionError("slope_diag requires x1 < x2 < x3");
  const double a = alpha.value();
  SlopeDiag out;
  const double f1 = eval_real(e, x1, alpha);
  const double f2 = eval_real(e, x2, alpha);
  const double f3 = eval_real(e, x3, alpha);
  out.real.lhs = (f1 - f2) / spow(x1 - x2, a);
  out.real.rhs = (f3 - f2) / spow(x3 - x2, a);
  out.real.holds = out.real.lhs <= out.real.rhs + scaled_tol(tolerance, out.real.lhs, out.real.rhs);
  try {
    const FractalNumber g1 = eval_fractal(e, x1, alpha);
    const FractalNumber g2 = eval_fractal(e, x2, alpha);
    const FractalNumber g3 = eval_fractal(e, x3, alpha);
    const FractalNumber left = (g1 - g2) / FractalNumber(x1 - x2, alpha);
    const FractalNumber right = (g3 - g2) / FractalNumber(x3 - x2, alpha);
    SlopeReading fractal;
    fractal.lhs = left.display();
    fractal.rhs = right.display();
    fractal.holds = left.base() <= right.base() + scaled_tol(tolerance, left.base(), right.base());
    out.fractal = fractal;
  } catch (const DomainError&) {
    // no base image
  }
  return out;
}

ConvexityReport grad_monotone_check(const Expr& e, const Interval& interval, Alpha alpha,
                                    const DerivativeCheckOptions& options) {
  ConvexityReport report = base_report("gradient", Mode::real, alpha, options.tolerance);
  const Expr d = alpha_diff(e, alpha, 1).derivative;
  const auto xs = interval.sample(options.points);
  report.grid = std::to_string(options.points) + " points on " + interval.to_string();
  Tally tally(report, options.tolerance, options.max_witnesses);
  try {
    double prev = eval_real(d, xs.front(), alpha);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double cur = eval_real(d, xs[i], alpha);
      if (!std::isfinite(cur)) throw DomainError("non-finite derivative");
      tally.add(prev, cur, {xs[i - 1], kNaN, xs[i], prev, cur});
      prev = cur;
    }
  } catch (const Error& err) {
    mark_inconclusive(report, err.what());
    return report;
  }
  tally.finish();
  return report;
}

ConvexityReport support_line_check(const Expr& e, const Interval& interval, Alpha alpha,
                                   const DerivativeCheckOptions& options) {
  ConvexityReport report = base_report("support", Mode::real, alpha, options.tolerance);
  const Expr d = alpha_diff(e, alpha, 1).derivative;
  const auto xs = interval.sample(options.points);
  report.grid = std::to_string(options.points) + " points (all ordered pairs) on " +
                interval.to_string();
  const double a = alpha.value();
  const double norm = gamma1p_alpha(Rational(1), alpha);
  Tally tally(report, options.tolerance, options.max_witnesses);
  try {
    std::vector<double> f(xs.size());
    std::vector<double> df(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      f[i] = eval_real(e, xs[i], alpha);
      df[i] = eval_real(d, xs[i], alpha);
      if (!std::isfinite(df[i])) throw DomainError("non-finite derivative");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (i == j) continue;
        const double tangent = f[i] + df[i] / norm * spow(xs[j] - xs[i], a);
        tally.add(tangent, f[j], {xs[i], kNaN, xs[j], tangent, f[j]});
      }
    }
  } catch (const Error& err) {
    mark_inconclusive(report, err.what());
    return report;
  }
  tally.finish();
  return report;
}

ConvexityReport second_deriv_check(const Expr& e, const Interval& interval, Alpha alpha,
                                   const DerivativeCheckOptions& options) {
  ConvexityReport report = base_report("second-derivative", Mode::real, alpha, options.tolerance);
  const Expr d2 = alpha_diff(e, alpha, 2).derivative;
  const auto xs = interval.sample(options.points);
  report.grid = std::to_string(options.points) + " points on " + interval.to_string();
  Tally tally(report, options.tolerance, options.max_witnesses);
  try {
    for (double x : xs) {
      const double v = eval_real(d2, x, alpha);
      if (!std::isfinite(v)) throw DomainError("non-finite second derivative");
      tally.add(0.0, v, {x, kNaN, kNaN, 0.0, v});
    }
  } catch (const Error& err) {
    mark_inconclusive(report, err.what());
    return report;
  }
  tally.finish(true);
  return report;
}

CrossCheck cross_check(const Expr& e, const Interval& interval, Alpha alpha) {
  CrossCheck out;
  out.chord = chord_check(e, interval, alpha);
  auto guarded = [&](auto&& run, const char* name) {
    try {
      return run();
    } catch (const RuleSetError& err) {
      ConvexityReport r = base_report(name, Mode::real, alpha, 1e-10);
      mark_inconclusive(r, err.what());
      return r;
    }
  };
  out.gradient = guarded([&] { return grad_monotone_check(e, interval, alpha); }, "gradient");
  out.support = guarded([&] { return support_line_check(e, interval, alpha); }, "support");
  out.second = guarded([&] { return second_deriv_check(e, interval, alpha); }, "second-derivative");
  auto convex = [](const ConvexityReport& r) {
    return r.verdict == Verdict::convex || r.verdict == Verdict::strictly_convex;
  };
  const ConvexityReport* reports[] = {&out.chord, &out.gradient, &out.support, &out.second};
  const bool reference = convex(out.chord);
  out.agree = true;
  for (const ConvexityReport* r : reports) {
    if (r->verdict == Verdict::inconclusive) {
      out.agree = false;
      out.findings.push_back(r->check + " inconclusive: " + r->reason);
    } else if (convex(*r) != reference) {
      out.agree = false;
      out.findings.push_back(r->check + " says " + to_string(r->verdict) + " but chord says " +
                             to_string(out.chord.verdict));
    }
  }
  return out;
}

}  // namespace fracvex
