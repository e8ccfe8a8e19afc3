#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracvex/calculus.hpp"
#include "fracvex/convexity.hpp"
#include "fracvex/error.hpp"
#include "fracvex/inequalities.hpp"
#include "oracles.hpp"

using fracvex::Alpha;
using fracvex::Expr;
using fracvex::Mode;
using fracvex::parse;

namespace {

Expr random_nonnegative_polynomial(std::mt19937_64& rng, bool integer_k) {
  std::uniform_real_distribution<double> coeff(0.0, 5.0);
  std::uniform_int_distribution<int> count(1, 4), kn(1, 8), kd(1, 3);
  Expr e = Expr::constant(0);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const int d = integer_k ? 1 : kd(rng);
    const fracvex::Rational k(kn(rng) * d + (integer_k ? 0 : kd(rng) - 1), d);
    e = e + Expr::constant(coeff(rng)) * Expr::pow_alpha(Expr::var(), k);
  }
  return e;
}

}  // namespace

TEST(Jensen, Examples) {
  const double xs[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const double ws[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto r = fracvex::jensen(parse("(x+1/x)^(10a)"), xs, ws, Alpha(0.5));
  EXPECT_NEAR(r.lhs, 411.522633744856, 1e-9);
  EXPECT_NEAR(r.rhs, 712.778110110649, 1e-9);
  EXPECT_TRUE(r.satisfied);
  const double pair[] = {0.6, 0.9};
  const double half[] = {0.5, 0.5};
  const auto p = fracvex::jensen(parse("x^(3a)"), pair, half, Alpha(0.5));
  EXPECT_NEAR(p.lhs, std::pow(1.5, 1.5) / std::pow(8, 0.5), 1e-14);
  EXPECT_NEAR(p.rhs, (std::pow(0.6, 1.5) + std::pow(0.9, 1.5)) / std::sqrt(2.0), 1e-14);
  const auto same = fracvex::jensen(parse("x^(3a)+1"), xs, ws, Alpha(0.5), Mode::fractal);
  EXPECT_NEAR(same.lhs, same.rhs, 1e-13);
}

TEST(Jensen, RejectsBadWeights) {
  const double xs[] = {1.0, 2.0};
  const double bad[] = {0.5, 0.6};
  const double neg[] = {1.5, -0.5};
  EXPECT_THROW(fracvex::jensen(parse("x"), xs, bad, Alpha(0.5)), fracvex::PreconditionError);
  EXPECT_THROW(fracvex::jensen(parse("x"), xs, neg, Alpha(0.5)), fracvex::PreconditionError);
}

TEST(Jensen, RealModeSoundness) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> as(0.05, 1.0), xs(0.0, 5.0);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const Expr f = random_nonnegative_polynomial(rng, false);
    const int n = count(rng);
    const auto w = oracle::random_simplex(rng, n);
    std::vector<double> x(n);
    for (auto& v : x) v = xs(rng);
    const auto r = fracvex::jensen(f, x, w, Alpha(as(rng)));
    EXPECT_GE(r.margins[0], -1e-10) << f.to_string();
  }
}

TEST(Jensen, FractalModeSoundness) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> as(0.05, 1.0), xs(0.0, 3.0), coeff(-2.0, 2.0);
  int convex_cases = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Alpha alpha(as(rng));
    // Base image phi(x) = c0 + c1 x + c2 x^2 + c3 x^3, convex on [0,3] iff
    // 2 c2 + 6 c3 x >= 0 at both ends.
    double c[4];
    for (double& v : c) v = coeff(rng);
    if (!(2 * c[2] >= 0 && 2 * c[2] + 18 * c[3] >= 0)) continue;
    ++convex_cases;
    Expr f = Expr::constant(0);
    for (int k = 0; k < 4; ++k) {
      const Expr term = Expr::constant_alpha(std::fabs(c[k])) * Expr::pow_alpha(Expr::var(), k);
      f = c[k] < 0 ? f - term : f + term;
    }
    const auto w = oracle::random_simplex(rng, 4);
    std::vector<double> x(4);
    for (auto& v : x) v = xs(rng);
    const auto r = fracvex::jensen(f, x, w, alpha, Mode::fractal);
    EXPECT_GE(r.margins[0], -1e-12 * std::max(1.0, std::fabs(r.rhs))) << f.to_string();
    // Brute-force classical Jensen on the base image.
    const auto phi = [&](double t) { return c[0] + c[1] * t + c[2] * t * t + c[3] * t * t * t; };
    double mix = 0, avg = 0;
    for (int i = 0; i < 4; ++i) {
      mix += w[i] * x[i];
      avg += w[i] * phi(x[i]);
    }
    EXPECT_LE(phi(mix), avg + 1e-12 * std::max(1.0, std::fabs(avg)));
  }
  EXPECT_GT(convex_cases, 50);
}

TEST(Jensen, SecondDerivativeChain) {
  std::mt19937_64 rng(57);
  std::uniform_real_distribution<double> as(0.2, 1.0), xs(0.1, 0.9);
  const char* exprs[] = {"(x+1/x)^(10a)", "E(x^a)", "x^(2a)", "x^(3a) + 2*x^(5/2a)", "-x^(2a)"};
  for (const char* text : exprs) {
    const Expr f = parse(text);
    const Alpha alpha(as(rng));
    const auto second = fracvex::second_deriv_check(f, fracvex::Interval{0.1, 0.9}, alpha);
    if (second.verdict != fracvex::Verdict::convex) continue;
    for (int trial = 0; trial < 100; ++trial) {
      const auto w = oracle::random_simplex(rng, 3);
      const std::vector<double> x{xs(rng), xs(rng), xs(rng)};
      EXPECT_TRUE(fracvex::jensen(f, x, w, alpha).satisfied) << text;
    }
  }
}

TEST(HermiteHadamard, Examples) {
  const auto half = fracvex::hermite_hadamard(parse("x^(3a)"), 0, 1, Alpha(0.5));
  EXPECT_NEAR(half.lhs, 0.353553, 1e-6);
  ASSERT_TRUE(half.mid.has_value());
  EXPECT_NEAR(*half.mid, oracle::gamma(1.5) * oracle::gamma(2.5) / oracle::gamma(3.0), 1e-12);
  EXPECT_NEAR(half.rhs, 0.707107, 1e-6);
  EXPECT_TRUE(half.satisfied);
  const auto one = fracvex::hermite_hadamard(parse("x^(3a)"), 0, 1, Alpha(1.0));
  EXPECT_EQ(one.lhs, 0.125);
  EXPECT_EQ(*one.mid, 0.25);
  EXPECT_EQ(one.rhs, 0.5);
  const auto flat = fracvex::hermite_hadamard(parse("3^a"), 1, 2, Alpha(0.5), Mode::fractal);
  EXPECT_NEAR(flat.lhs, std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(flat.margins[0], 0.0, 1e-14);
  EXPECT_NEAR(flat.margins[1], 0.0, 1e-14);
  EXPECT_THROW(fracvex::hermite_hadamard(parse("x^(3a)"), 1, 2, Alpha(0.5)), fracvex::PreconditionError);
  EXPECT_THROW(fracvex::hermite_hadamard(parse("x^(3a)"), 1, 0, Alpha(0.5)), fracvex::PreconditionError);
}

TEST(HermiteHadamard, FractalModeOnAnyBaseImage) {
  const auto r = fracvex::hermite_hadamard(parse("(x-1)^(4a) + 1/x"), 0.5, 2.0, Alpha(0.4), Mode::fractal);
  EXPECT_TRUE(r.satisfied);
  // Base image sign(x-1)|x-1|^4 + x^{-1/0.4}: the bare x is the element with
  // displayed value x and alpha powers keep the sign of their base.
  const double mean =
      ((std::pow(1.0, 5) - std::pow(0.5, 5)) / 5 + (std::pow(0.5, -1.5) - std::pow(2.0, -1.5)) / 1.5) / 1.5;
  EXPECT_NEAR(*r.mid, std::pow(mean, 0.4), 1e-9);
}

TEST(HermiteHadamard, RandomPolynomialsFractalMode) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> len(0.1, 3.0);
  for (double a : {0.25, 0.5, 0.75, 1.0}) {
    for (int trial = 0; trial < 250; ++trial) {
      const Expr f = random_nonnegative_polynomial(rng, true);
      const auto r = fracvex::hermite_hadamard(f, 0, len(rng), Alpha(a), Mode::fractal);
      EXPECT_GE(r.margins[0], -1e-10 * std::max(1.0, r.rhs)) << f.to_string() << " alpha=" << a;
      EXPECT_GE(r.margins[1], -1e-10 * std::max(1.0, r.rhs)) << f.to_string() << " alpha=" << a;
    }
  }
}

TEST(HermiteHadamard, RealModeCounterexampleBelowAlphaOne) {
  // x^a on [0,1]: both ends equal 2^{-a} while the middle is
  // Gamma(1+a)^2 / Gamma(1+2a), which exceeds it for small a.
  const auto r = fracvex::hermite_hadamard(parse("x^a"), 0, 1, Alpha(0.25));
  EXPECT_NEAR(*r.mid, std::pow(oracle::gamma(1.25), 2) / oracle::gamma(1.5), 1e-12);
  EXPECT_FALSE(r.satisfied);
  EXPECT_TRUE(fracvex::hermite_hadamard(parse("x^a"), 0, 1, Alpha(0.25), Mode::fractal).satisfied);
}

TEST(CauchySchwarz, Examples) {
  const double a[] = {1, 2}, b[] = {2, 1};
  const auto r = fracvex::cauchy_schwarz(a, b, Alpha(0.5));
  EXPECT_NEAR(r.lhs, 2 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.rhs, 3.0, 1e-14);
  EXPECT_TRUE(r.satisfied);
  const double e1[] = {1, 0}, e2[] = {0, 1};
  const auto z = fracvex::cauchy_schwarz(e1, e2, Alpha(0.5));
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 1.0);
  EXPECT_FALSE(z.witnesses.empty());
  const double three[] = {1, 2, 3};
  EXPECT_THROW(fracvex::cauchy_schwarz(a, three, Alpha(0.5)), fracvex::PreconditionError);
}

TEST(CauchySchwarz, RandomAndProportional) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> entry(1e-9, 100.0), as(0.05, 1.0), scale(0.1, 10.0);
  std::uniform_int_distribution<int> len(1, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    std::vector<double> a(n), b(n), c(n);
    for (int i = 0; i < n; ++i) {
      a[i] = entry(rng);
      b[i] = entry(rng);
    }
    const double k = scale(rng);
    for (int i = 0; i < n; ++i) c[i] = k * b[i];
    const Alpha alpha(as(rng));
    const auto r = fracvex::cauchy_schwarz(a, b, alpha);
    EXPECT_GE(r.margins[0], -1e-12 * std::max(1.0, r.rhs));
    const auto eq = fracvex::cauchy_schwarz(c, b, alpha);
    double direct = 0;
    for (double v : b) direct += std::pow(v, 2 * alpha.value());
    direct *= std::pow(k, alpha.value());
    EXPECT_LE(oracle::rel_err(eq.lhs, direct), 1e-12);
    EXPECT_LE(std::fabs(eq.rhs - eq.lhs), 1e-9 * eq.rhs);
  }
}

TEST(PowerMean, Examples) {
  const double d[] = {1, 2};
  EXPECT_NEAR(fracvex::power_mean(d, 1, Alpha(0.5)), 1.224744871391589, 1e-12);
  EXPECT_NEAR(fracvex::power_mean(d, 2, Alpha(0.5)), 1.2574334296829355, 1e-12);
  EXPECT_NEAR(fracvex::power_mean(d, 1, Alpha(0.5), Mode::real), 1.7071067811865475, 1e-12);
  EXPECT_NEAR(fracvex::power_mean(d, 2, Alpha(0.5), Mode::real), 1.4564753151219703, 1e-12);
  const double flat[] = {3, 3, 3};
  for (double r : {-2.0, 0.5, 1.0, 4.0}) {
    EXPECT_NEAR(fracvex::power_mean(flat, r, Alpha(0.3)), std::pow(3.0, 0.3), 1e-13);
  }
  EXPECT_TRUE(fracvex::power_mean_compare(d, 1, 2, Alpha(0.5)).satisfied);
  EXPECT_FALSE(fracvex::power_mean_compare(d, 1, 2, Alpha(0.5), Mode::real).satisfied);
  EXPECT_TRUE(fracvex::power_mean_compare(d, 1, 2, Alpha(1.0), Mode::real).satisfied);
  EXPECT_THROW(fracvex::power_mean_compare(d, 2, 1, Alpha(0.5)), fracvex::PreconditionError);
  const double bad[] = {1, -2};
  EXPECT_THROW(fracvex::power_mean(bad, 1, Alpha(0.5)), fracvex::Error);
}

TEST(PowerMean, FractalMonotonicity) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> entry(0.01, 100.0), as(0.05, 1.0);
  std::uniform_int_distribution<int> len(1, 10);
  const std::pair<double, double> st[] = {{1, 2}, {0.5, 3}, {-2, -1}};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(len(rng));
    for (auto& v : a) v = entry(rng);
    const Alpha alpha(as(rng));
    for (const auto& [s, t] : st) {
      const auto r = fracvex::power_mean_compare(a, s, t, alpha);
      EXPECT_TRUE(r.satisfied);
      const double ratio = *std::max_element(a.begin(), a.end()) / *std::min_element(a.begin(), a.end());
      if (ratio > 1 + 1e-6) EXPECT_GT(r.margins[0], 0.0);
    }
    std::vector<double> same(a.size(), a[0]);
    EXPECT_NEAR(fracvex::power_mean_compare(same, 1, 2, alpha).margins[0], 0.0, 1e-12 * std::pow(a[0], alpha.value()));
  }
}

TEST(Examples, Scenario51) {
  const auto r = fracvex::run_example("5.1", Alpha(0.5));
  EXPECT_NEAR(r.lhs, 2 * std::pow(2.0, -1.0 / 3), 1e-12);
  EXPECT_NEAR(r.lhs, 1.5874, 1e-4);
  EXPECT_TRUE(r.satisfied);
  EXPECT_THROW(fracvex::run_example("5.1", Alpha(0.5), {{"a", 1.0}, {"b", 1.0}}), fracvex::PreconditionError);
  EXPECT_THROW(fracvex::run_example("5.1", Alpha(0.5), {{"z", 1.0}}), fracvex::PreconditionError);
}

TEST(Examples, Scenario52Grid) {
  for (double a : {0.25, 0.5, 0.75, 1.0}) {
    for (int i = 0; i <= 50; ++i) {
      for (int j = 0; j <= 50; ++j) {
        const auto r = fracvex::run_example("5.2", Alpha(a), {{"x", 0.08 * i}, {"y", 0.08 * j}});
        ASSERT_TRUE(r.satisfied) << "alpha=" << a << " x=" << 0.08 * i << " y=" << 0.08 * j;
      }
    }
  }
}

TEST(Examples, Scenario54) {
  const auto one = fracvex::run_example("5.4", Alpha(1.0));
  EXPECT_LE(oracle::rel_err(one.lhs, 1e10 / std::pow(3.0, 9)), 1e-12);
  EXPECT_LE(std::fabs(one.rhs - one.lhs), 1e-9 * one.lhs);
  const auto half = fracvex::run_example("5.4", Alpha(0.5));
  EXPECT_NEAR(half.lhs, 712.778110110649, 1e-8);
  EXPECT_TRUE(half.satisfied);
  EXPECT_THROW(fracvex::run_example("5.4", Alpha(0.5), {{"a", 0.5}, {"b", 0.5}, {"c", 0.5}}),
               fracvex::PreconditionError);
}

TEST(Examples, Scenario55) {
  for (double a : {0.5, 1.0}) {
    for (double base : {0.3, 1.0, 2.0}) {
      const auto r = fracvex::run_example("5.5", Alpha(a), {{"a", base}, {"b", base}});
      EXPECT_NEAR(r.rhs, 1.0, 1e-9);
    }
  }
  EXPECT_TRUE(fracvex::run_example("5.5", Alpha(0.5), {{"a", 1.0}, {"b", 2.0}, {"c", 3.0}}).satisfied);
  EXPECT_THROW(fracvex::run_example("5.5", Alpha(0.5), {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"d", 1.0}}),
               fracvex::PreconditionError);
  EXPECT_THROW(fracvex::run_example("5.3", Alpha(0.5)), fracvex::PreconditionError);
}

TEST(Reports, AlphaOneMatchesClassicalValues) {
  const double xs[] = {0.2, 1.4, 2.5};
  const double ws[] = {0.2, 0.3, 0.5};
  const auto r = fracvex::jensen(parse("x^(3a) + 2*x^a"), xs, ws, Alpha(1.0));
  const auto f = [](double x) { return x * x * x + 2 * x; };
  EXPECT_LE(oracle::rel_err(r.lhs, f(0.2 * 0.2 + 0.3 * 1.4 + 0.5 * 2.5)), 1e-12);
  EXPECT_LE(oracle::rel_err(r.rhs, 0.2 * f(0.2) + 0.3 * f(1.4) + 0.5 * f(2.5)), 1e-12);
}
