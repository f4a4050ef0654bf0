#pragma once

// Independent numeric oracles for the test suites. These deliberately avoid
// the library's Hurwitz/Barnes code paths.

#include <mpfr.h>

#include "sst/bernoulli.hpp"
#include "sst/bigreal.hpp"

namespace sst::oracle {

/// log Gamma straight from MPFR.
inline BigReal lngamma(const BigReal& x, long prec) {
  BigReal out(prec);
  mpfr_lngamma(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

inline BigReal digamma_mpfr(const BigReal& x, long prec) {
  BigReal out(prec);
  mpfr_digamma(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

/// zeta'(2) = -sum_{n>=2} log(n)/n^2 by direct summation with an
/// Euler-Maclaurin tail for g(t) = log(t)/t^2 (all derivatives in closed
/// form: g^(m)(t) = t^(-2-m) (a_m log t + b_m)).
inline BigReal zeta_prime_2(long prec) {
  long wp = prec + 64;
  const long N = 16384;  // EM remainder below 2^-347 with 12 corrections
  BigReal acc(wp);
  for (long n = 2; n < N; ++n) {
    BigReal nn = BigReal::from(n, wp);
    acc -= log(nn) / (nn * nn);
  }
  BigReal bn = BigReal::from(N, wp);
  BigReal logN = log(bn);
  // integral: -(log N + 1)/N ; half term: -log(N)/N^2 / 2
  acc -= (logN + 1) / bn;
  acc -= logN / (bn * bn * 2);
  // correction terms +sum_j B_2j/(2j)! g^(2j-1)(N) with
  // g^(m)(t) = t^(-2-m) (a_m log t + b_m)
  Rat a_m(1), b_m(0);
  long m = 0;
  for (long j = 1; j <= 12; ++j) {
    while (m < 2 * j - 1) {
      Rat na = -(Rat(2 + m)) * a_m;
      Rat nb = a_m - Rat(2 + m) * b_m;
      a_m = na;
      b_m = nb;
      ++m;
    }
    BigReal g_deriv =
        (logN * BigReal::from(a_m, wp) + BigReal::from(b_m, wp)) * pow_si(bn, -2 - m);
    acc += BigReal::from(bernoulli_number(static_cast<unsigned>(2 * j)), wp) /
           BigReal::from(factorial(static_cast<unsigned long>(2 * j)), wp) * g_deriv;
  }
  return acc.round_to(prec);
}

/// zeta'(-1) from the functional equation:
/// zeta'(-1) = (1 - gamma - log 2 pi)/12 + zeta'(2)/(2 pi^2).
inline BigReal zeta_prime_minus1(long prec) {
  long wp = prec + 32;
  BigReal g = BigReal::euler(wp);
  BigReal l2pi = BigReal::log_2pi(wp);
  BigReal pi = BigReal::pi(wp);
  BigReal out = (BigReal::from(1, wp) - g - l2pi) / 12 + zeta_prime_2(wp) / (pi * pi * 2);
  return out.round_to(prec);
}

}  // namespace sst::oracle
