#include "fracvex/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fracvex/calculus.hpp"
#include "fracvex/error.hpp"
#include "fracvex/special.hpp"

namespace fracvex {

namespace {

InequalityReport make_report(std::string check, Alpha alpha, Mode mode) {
  InequalityReport r;
  r.check = std::move(check);
  r.alpha = alpha.value();
  r.mode = mode;
  return r;
}

void finalize(InequalityReport& r, double tolerance) {
  double scale = std::max({1.0, std::fabs(r.lhs), std::fabs(r.rhs)});
  if (r.mid) scale = std::max(scale, std::fabs(*r.mid));
  r.tolerance = tolerance * scale;
  r.satisfied = std::all_of(r.margins.begin(), r.margins.end(),
                            [&](double m) { return m >= -r.tolerance; });
}

void set_two_sided(InequalityReport& r, double lhs, double rhs, double tolerance) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.margins = {rhs - lhs};
  finalize(r, tolerance);
}

void set_chain(InequalityReport& r, double lhs, double mid, double rhs, double tolerance) {
  r.lhs = lhs;
  r.mid = mid;
  r.rhs = rhs;
  r.margins = {rhs - mid, mid - lhs};
  finalize(r, tolerance);
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

InequalityReport jensen(const Expr& f, std::span<const double> xs,
                        std::span<const double> lambdas, Alpha alpha, Mode mode,
                        double tolerance) {
  if (xs.empty() || xs.size() != lambdas.size()) {
    throw PreconditionError("jensen needs equally many points and weights (at least one)");
  }
  for (double l : lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw PreconditionError("weight " + describe(l) + " outside [0,1]");
  }
  const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  if (std::fabs(total - 1.0) > 1e-12) {
    throw PreconditionError("weights sum to " + describe(total) + ", expected 1");
  }
  double mix = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) mix += lambdas[i] * xs[i];

  InequalityReport r = make_report("jensen", alpha, mode);
  if (mode == Mode::real) {
    double rhs = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      rhs += std::pow(lambdas[i], alpha.value()) * eval_real(f, xs[i], alpha);
    }
    set_two_sided(r, eval_real(f, mix, alpha), rhs, tolerance);
  } else {
    FractalNumber rhs(0.0, alpha);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      rhs = rhs + FractalNumber(lambdas[i], alpha) * eval_fractal(f, xs[i], alpha);
    }
    set_two_sided(r, eval_fractal(f, mix, alpha).display(), rhs.display(), tolerance);
  }
  r.witnesses.push_back({"mixture point", {{"x", mix}}});
  return r;
}

InequalityReport hermite_hadamard(const Expr& f, double a, double b, Alpha alpha, Mode mode,
                                  double tolerance) {
  if (!(a < b)) throw PreconditionError("hermite_hadamard requires a < b");
  InequalityReport r = make_report("hh", alpha, mode);
  const double av = alpha.value();
  const double midpoint = 0.5 * (a + b);
  if (mode == Mode::real) {
    const Integrand integrand = to_integrand(f, a, alpha);
    const double integral = lfi(integrand, a, b, alpha);
    const double mid = gamma1p_alpha(Rational(1), alpha) / std::pow(b - a, av) * integral;
    const double lhs = eval_real(f, midpoint, alpha);
    const double rhs = (eval_real(f, a, alpha) + eval_real(f, b, alpha)) / std::pow(2.0, av);
    set_chain(r, lhs, mid, rhs, tolerance);
    r.witnesses.push_back({"local fractional integral", {{"value", integral}}});
  } else {
    const double integral = adaptive_simpson(
        [&](double x) { return eval_fractal(f, x, alpha).base(); }, a, b, 1e-10, 1000000);
    const double mean = integral / (b - a);
    const FractalNumber ends = (eval_fractal(f, a, alpha) + eval_fractal(f, b, alpha)) /
                               FractalNumber(2.0, alpha);
    set_chain(r, eval_fractal(f, midpoint, alpha).display(), spow(mean, av), ends.display(),
              tolerance);
    r.witnesses.push_back({"base image integral", {{"value", integral}}});
  }
  return r;
}

InequalityReport cauchy_schwarz(std::span<const double> as, std::span<const double> bs,
                                Alpha alpha, double tolerance) {
  if (as.size() != bs.size()) throw PreconditionError("length mismatch");
  const double av = alpha.value();
  InequalityReport r = make_report("cs", alpha, Mode::real);
  double lhs = 0.0;
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k < as.size(); ++k) {
    const double pa = std::pow(std::fabs(as[k]), av);
    const double pb = std::pow(std::fabs(bs[k]), av);
    lhs += pa * pb;
    sa += pa * pa;
    sb += pb * pb;
    if (as[k] == 0.0 || bs[k] == 0.0) {
      r.witnesses.push_back({"zero entry (limit case)", {{"k", static_cast<double>(k)}}});
    }
  }
  set_two_sided(r, lhs, std::sqrt(sa) * std::sqrt(sb), tolerance);
  return r;
}

double power_mean(std::span<const double> as, double r, Alpha alpha, Mode mode) {
  if (as.empty()) throw PreconditionError("power mean of an empty tuple");
  if (r == 0.0) throw PreconditionError("power mean exponent must be non-zero");
  for (double v : as) {
    if (!(v > 0.0)) throw PreconditionError("power mean requires positive data");
  }
  const double av = alpha.value();
  const double n = static_cast<double>(as.size());
  if (mode == Mode::real) {
    double sum = 0.0;
    for (double v : as) sum += std::pow(v, av * r);
    return std::pow(sum / std::pow(n, av), 1.0 / r);
  }
  // Each a_i^{alpha r} is the element with base a_i^r.
  FractalNumber sum(0.0, alpha);
  for (double v : as) sum = sum + FractalNumber(std::pow(v, r), alpha);
  const FractalNumber mean = sum / FractalNumber(n, alpha);
  return pow(mean, 1.0 / r).display();
}

InequalityReport power_mean_compare(std::span<const double> as, double s, double t, Alpha alpha,
                                    Mode mode, double tolerance) {
  if (!(s < t)) throw PreconditionError("power mean comparison requires s < t");
  if (!((s > 0.0) || (t < 0.0))) {
    throw PreconditionError("power mean comparison requires 0 < s < t or s < t < 0");
  }
  InequalityReport r = make_report("powermean", alpha, mode);
  set_two_sided(r, power_mean(as, s, alpha, mode), power_mean(as, t, alpha, mode), tolerance);
  r.witnesses.push_back({"exponents", {{"s", s}, {"t", t}}});
  return r;
}

namespace {

using Inputs = std::map<std::string, double>;

double input_or(const Inputs& in, const std::string& key, double fallback) {
  const auto it = in.find(key);
  return it == in.end() ? fallback : it->second;
}

void check_keys(const Inputs& in, std::initializer_list<const char*> allowed,
                const std::string& id) {
  for (const auto& [key, value] : in) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* k) { return key == k; });
    if (!ok) throw PreconditionError("example " + id + " has no input '" + key + "'");
  }
}

void require_positive(const Inputs& values, const std::string& id) {
  for (const auto& [key, v] : values) {
    if (!(v > 0.0)) throw PreconditionError("example " + id + " requires " + key + " > 0");
  }
}

InequalityReport example_5_1(Alpha alpha, const Inputs& in, double tolerance) {
  check_keys(in, {"a", "b"}, "5.1");
  const double av = alpha.value();
  const double edge = std::pow(2.0, (av - 1.0) / (3.0 * av));
  const double a = input_or(in, "a", edge);
  const double b = input_or(in, "b", edge);
  require_positive({{"a", a}, {"b", b}}, "5.1");
  const double budget = std::pow(2.0, av);
  const double used = std::pow(a, 3.0 * av) + std::pow(b, 3.0 * av);
  if (used > budget * (1.0 + 1e-12)) {
    throw PreconditionError("example 5.1 requires a^{3a} + b^{3a} <= 2^a (got " + describe(used) +
                            " > " + describe(budget) + ")");
  }
  InequalityReport r = make_report("example-5.1", alpha, Mode::real);
  set_two_sided(r, a + b, 2.0, tolerance);
  // The Jensen step ((a+b)/2)^{3a} <= (a^{3a} + b^{3a}) / 2^a behind it.
  r.witnesses.push_back({"jensen step",
                         {{"f_mid", std::pow(0.5 * (a + b), 3.0 * av)}, {"bound", used / budget}}});
  return r;
}

InequalityReport example_5_2(Alpha alpha, const Inputs& in, double tolerance) {
  check_keys(in, {"x", "y"}, "5.2");
  const double x = input_or(in, "x", 0.0);
  const double y = input_or(in, "y", 1.0);
  InequalityReport r = make_report("example-5.2", alpha, Mode::real);
  const double lhs = mittag_leffler(alpha, 0.5 * (x + y));
  const double rhs =
      (mittag_leffler(alpha, x) + mittag_leffler(alpha, y)) / std::pow(2.0, alpha.value());
  set_two_sided(r, lhs, rhs, tolerance);
  return r;
}

InequalityReport example_5_4(Alpha alpha, const Inputs& in, double tolerance) {
  check_keys(in, {"a", "b", "c"}, "5.4");
  const double third = 1.0 / 3.0;
  const Inputs v{{"a", input_or(in, "a", third)},
                 {"b", input_or(in, "b", third)},
                 {"c", input_or(in, "c", third)}};
  require_positive(v, "5.4");
  const double total = v.at("a") + v.at("b") + v.at("c");
  if (std::fabs(total - 1.0) > 1e-12) {
    throw PreconditionError("example 5.4 requires a + b + c = 1 (got " + describe(total) + ")");
  }
  const double av = alpha.value();
  auto f = [&](double t) { return std::pow(t + 1.0 / t, 10.0 * av); };
  const double value = f(v.at("a")) + f(v.at("b")) + f(v.at("c"));
  const double bound = std::pow(10.0, 10.0 * av) / std::pow(3.0, 9.0 * av);
  const double symmetric = 3.0 * std::pow(10.0 / 3.0, 10.0 * av);
  InequalityReport r = make_report("example-5.4", alpha, Mode::real);
  set_two_sided(r, bound, value, tolerance);
  r.witnesses.push_back({"bound vs value at a=b=c=1/3",
                         {{"bound", bound}, {"symmetric_value", symmetric},
                          {"gap", symmetric - bound}}});
  return r;
}

InequalityReport example_5_5(Alpha alpha, const Inputs& in, double tolerance) {
  check_keys(in, {"a", "b", "c", "d"}, "5.5");
  const double av = alpha.value();
  const double a = input_or(in, "a", 1.0);
  const double b = input_or(in, "b", 1.0);
  const double target = std::pow(std::pow(a, 2.0 * av) + std::pow(b, 2.0 * av), 3.0);
  const double c_default = std::pow(0.5 * target, 1.0 / (2.0 * av));
  const double c = input_or(in, "c", c_default);
  double d = 0.0;
  if (in.count("d") != 0) {
    d = in.at("d");
  } else {
    const double rest = target - std::pow(c, 2.0 * av);
    if (!(rest > 0.0)) {
      throw PreconditionError("example 5.5: no d > 0 satisfies c^{2a} + d^{2a} = (a^{2a}+b^{2a})^3");
    }
    d = std::pow(rest, 1.0 / (2.0 * av));
  }
  require_positive({{"a", a}, {"b", b}, {"c", c}, {"d", d}}, "5.5");
  const double constraint = std::pow(c, 2.0 * av) + std::pow(d, 2.0 * av);
  if (std::fabs(constraint - target) > 1e-9 * std::max(1.0, target)) {
    throw PreconditionError("example 5.5 requires c^{2a} + d^{2a} = (a^{2a} + b^{2a})^3 (got " +
                            describe(constraint) + " vs " + describe(target) + ")");
  }
  const double value = std::pow(a, 3.0 * av) / std::pow(c, av) +
                       std::pow(b, 3.0 * av) / std::pow(d, av);
  InequalityReport r = make_report("example-5.5", alpha, Mode::real);
  set_two_sided(r, 1.0, value, tolerance);
  r.witnesses.push_back({"inputs", {{"a", a}, {"b", b}, {"c", c}, {"d", d}}});
  return r;
}

}  // namespace

InequalityReport run_example(const std::string& id, Alpha alpha,
                             const std::map<std::string, double>& inputs, double tolerance) {
  if (id == "5.1") return example_5_1(alpha, inputs, tolerance);
  if (id == "5.2") return example_5_2(alpha, inputs, tolerance);
  if (id == "5.4") return example_5_4(alpha, inputs, tolerance);
  if (id == "5.5") return example_5_5(alpha, inputs, tolerance);
  throw PreconditionError("unknown example id '" + id + "' (expected 5.1, 5.2, 5.4, 5.5)");
}

}  // namespace fracvex
