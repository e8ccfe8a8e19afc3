#pragma once

#include "fracvex/alpha.hpp"
#include "fracvex/rational.hpp"

namespace fracvex {

/// Gamma(1 + k*alpha). Throws DomainError at a pole.
double gamma1p_alpha(Rational k, Alpha alpha);

/// Gamma(1 + k*alpha) / Gamma(1 + (k-1)*alpha), the factor of the local
/// fractional power rule d^a x^{ka} = ratio * x^{(k-1)a}.
double gamma_ratio(Rational k, Alpha alpha);

struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;  ///< 2*|last term kept|
  int terms = 0;
};

/// E_alpha(x^alpha) = sum_k spow(x, alpha)^k / Gamma(1 + k*alpha).
///
/// Summation stops once the term ratio drops below 1/2 and the current term
/// is below 1e-15 of the partial sum. Alternating series (x < 0) are summed
/// in 50-digit arithmetic to avoid cancellation. Throws OverflowError when the
/// sum leaves the double range.
SeriesValue mittag_leffler_series(Alpha alpha, double x);

inline double mittag_leffler(Alpha alpha, double x) {
  return mittag_leffler_series(alpha, x).value;
}

}  // namespace fracvex
