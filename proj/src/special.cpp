#include "fracvex/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracvex/error.hpp"

namespace fracvex {

namespace {

double gamma_checked(double arg) {
  if (arg <= 0.0 && arg == std::floor(arg)) {
    std::ostringstream os;
    os << "Gamma pole at argument " << arg;
    throw DomainError(os.str());
  }
  return std::tgamma(arg);
}

constexpr double kRelEps = 1e-15;
constexpr int kMaxTerms = 100000;

SeriesValue ml_positive(double alpha, double z) {
  // z >= 0: every term is non-negative, terms computed in log space.
  SeriesValue out;
  if (z == 0.0) {
    out.value = 1.0;
    out.terms = 1;
    return out;
  }
  const double log_z = std::log(z);
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < kMaxTerms; ++k) {
    const double term = std::exp(k * log_z - std::lgamma(1.0 + k * alpha));
    sum += term;
    if (!std::isfinite(sum)) throw OverflowError();
    const double ratio = term / prev;
    prev = term;
    if (ratio < 0.5 && term < kRelEps * sum) {
      out.value = sum;
      out.error_bound = 2.0 * term;
      out.terms = k + 1;
      return out;
    }
  }
  throw OverflowError();
}

SeriesValue ml_alternating(double alpha, double z) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big bz = big(z);
  const big balpha = big(alpha);
  big sum = 1;
  big power = 1;
  big prev = 1;
  const double max_double = std::numeric_limits<double>::max();
  for (int k = 1; k < kMaxTerms; ++k) {
    power *= bz;
    const big term = power / boost::math::tgamma(big(1) + big(k) * balpha);
    sum += term;
    if (abs(sum) > max_double) throw OverflowError();
    const big ratio = abs(term / prev);
    prev = term;
    if (ratio < 0.5 && abs(term) < big(kRelEps) * abs(sum)) {
      SeriesValue out;
      out.value = static_cast<double>(sum);
      out.error_bound = 2.0 * static_cast<double>(abs(term));
      out.terms = k + 1;
      return out;
    }
  }
  throw OverflowError();
}

}  // namespace

double gamma1p_alpha(Rational k, Alpha alpha) {
  return gamma_checked(1.0 + k.times(alpha.value()));
}

double gamma_ratio(Rational k, Alpha alpha) {
  const double top_arg = 1.0 + k.times(alpha.value());
  const double bottom_arg = 1.0 + (k - Rational(1)).times(alpha.value());
  const double top = gamma_checked(top_arg);
  const double bottom = gamma_checked(bottom_arg);
  if (std::isfinite(top) && std::isfinite(bottom)) return top / bottom;
  if (top_arg > 0.0 && bottom_arg > 0.0) {
    return std::exp(std::lgamma(top_arg) - std::lgamma(bottom_arg));
  }
  throw OverflowError();
}

SeriesValue mittag_leffler_series(Alpha alpha, double x) {
  const double z = spow(x, alpha.value());
  if (!std::isfinite(z)) throw DomainError("non-finite Mittag-Leffler argument");
  if (z >= 0.0) return ml_positive(alpha.value(), z);
  return ml_alternating(alpha.value(), z);
}

}  // namespace fracvex
