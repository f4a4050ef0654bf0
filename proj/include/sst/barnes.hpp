#pragma once

#include <vector>

#include "sst/bigreal.hpp"
#include "sst/formal_zeta.hpp"

namespace sst {

struct AccuracyError : std::runtime_error {
  AccuracyError(const std::string& what, double achieved_log2_bound)
      : std::runtime_error(what), achieved_log2(achieved_log2_bound) {}
  double achieved_log2;
};

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Euler-Maclaurin starting parameters; both grow adaptively until the
/// first omitted correction term clears the precision target.
struct EMParams {
  long direct_terms = 64;
  long correction_order = 16;
};

/// Hurwitz zeta zeta_H(s, x) for x > 0, real s away from the pole at 1,
/// or its s-derivative (deriv = 1).
BigReal hurwitz(const BigReal& s, const BigReal& x, int deriv, long prec);

/// Value and s-derivative in one pass.
std::pair<BigReal, BigReal> hurwitz_jet(const BigReal& s, const BigReal& x, long prec);

/// log Gamma(x) = zeta_H'(0, x) + (1/2) log 2 pi.
BigReal log_gamma(const BigReal& x, long prec);

/// Digamma by upward shift plus the asymptotic series.
BigReal digamma(const BigReal& x, long prec);

/// Exact zeta(1-m, a, x), the Bernoulli-polynomial value.
Rat barnes_zeta_value(unsigned m, const std::vector<Rat>& a, const std::vector<Rat>& x);

/// Numeric zeta(s, a, z) with z = x.a^t, r in {1, 2}, real s away from the
/// poles at 1 (and 2 for r = 2); deriv selects d/ds. The r = 2 case runs a
/// shifted head sum plus an Euler-Maclaurin tail whose terms reduce to
/// Hurwitz zeta values at u_M = (z + M a_2)/a_1, differentiated
/// symbolically in s.
BigReal barnes_zeta_s(const BigReal& s, const std::vector<BigReal>& a,
                      const std::vector<Rat>& x, int deriv, long prec);

/// zeta'(0, a, z): the log multiple gamma value.
BigReal barnes_deriv0(const std::vector<BigReal>& a, const std::vector<Rat>& x, long prec);

/// B_{2j}/(2j)! to at least wp bits (internal coefficient table, exposed
/// for tests).
BigReal em_coefficient(unsigned j, long wp);

}  // namespace sst
