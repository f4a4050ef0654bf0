#include "sst/barnes.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <mutex>

namespace sst {

namespace {

// First-order jet in s: value and d/ds.
struct Jet {
  BigReal f, d;

  Jet() = default;
  Jet(BigReal value, BigReal deriv) : f(std::move(value)), d(std::move(deriv)) {}
  static Jet constant(BigReal value, long wp) { return {std::move(value), BigReal(wp)}; }
};

Jet operator+(const Jet& a, const Jet& b) { return {a.f + b.f, a.d + b.d}; }
Jet operator*(const Jet& a, const Jet& b) { return {a.f * b.f, a.f * b.d + a.d * b.f}; }
Jet operator*(const Jet& a, const BigReal& c) { return {a.f * c, a.d * c}; }
Jet operator/(const Jet& a, const Jet& b) {
  BigReal inv = a.f / b.f;
  return {inv, (a.d - inv * b.d) / b.f};
}

// t^(c - s) as a jet at s = s0, for t > 0.
Jet power_jet(const BigReal& t, const BigReal& s0, long c, long wp) {
  BigReal lt = log(t);
  BigReal e = (BigReal::from(c, wp) - s0) * lt;
  BigReal v = exp(e);
  return {v, -lt * v};
}

double log2_abs(const BigReal& v) {
  if (v.is_zero()) return -1e9;
  long exp2;
  double m = mpfr_get_d_2exp(&exp2, v.raw(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(exp2);
}

}  // namespace

BigReal em_coefficient(unsigned j, long wp) {
  // B_{2j}/(2j)! = (-1)^(j+1) * 2 * zeta(2j) / (2 pi)^(2j)
  static std::mutex mu;
  static std::map<long, std::vector<BigReal>> cache;
  long bucket = ((wp + 63) / 64) * 64;
  std::lock_guard<std::mutex> lock(mu);
  auto& vec = cache[bucket];
  while (vec.size() <= j) {
    unsigned jj = static_cast<unsigned>(vec.size());
    if (jj == 0) {
      vec.push_back(BigReal::from(1, bucket));  // unused slot
      continue;
    }
    BigReal z(bucket);
    mpfr_zeta_ui(z.raw(), 2 * jj, MPFR_RNDN);
    BigReal two_pi = BigReal::pi(bucket) * 2;
    BigReal c = (z * 2) / pow_si(two_pi, 2 * static_cast<long>(jj));
    if (jj % 2 == 0) c = -c;
    vec.push_back(std::move(c));
  }
  return vec[j];
}

namespace {

// Euler-Maclaurin core: returns the jet of zeta_H(s, x) at real s0.
Jet hurwitz_core(const BigReal& s0, const BigReal& x, long prec) {
  if (x.sign() <= 0) throw std::domain_error("hurwitz needs x > 0");
  long wp = prec + 96;
  BigReal one = BigReal::from(1, wp);
  if (abs(s0 - one) < BigReal::pow2(-prec / 2, wp))
    throw PoleError("s too close to the pole at 1");

  BigReal s = s0.round_to(wp);
  BigReal xw = x.round_to(wp);
  double sd = s.to_double();
  double xd = xw.to_double();

  double q_target = std::max({16.0, 0.25 * static_cast<double>(prec + 64), 0.30 * std::fabs(sd)});

  for (int attempt = 0; attempt < 10; ++attempt, q_target *= 1.8) {
    long n_terms = 0;
    if (xd < q_target) n_terms = static_cast<long>(q_target - xd) + 1;

    Jet acc{BigReal(wp), BigReal(wp)};
    for (long k = 0; k < n_terms; ++k) acc = acc + power_jet(xw + k, s, 0, wp);

    BigReal big_x = xw + n_terms;
    // integral term X^(1-s)/(s-1)
    Jet s_minus_1{s - one, BigReal::from(1, wp)};
    acc = acc + power_jet(big_x, s, 1, wp) / s_minus_1;
    // half term X^(-s)/2
    Jet xpow = power_jet(big_x, s, 0, wp);
    acc = acc + xpow * BigReal::from(rat(1, 2), wp);

    // Relative truncation target: for large s the value is exponentially
    // small and callers scale it back up, so an absolute cutoff is not
    // enough. Never slacker than the absolute target.
    const double result_mag = std::max(log2_abs(acc.f), log2_abs(acc.d));
    const double target_log2 =
        std::min(result_mag, 0.0) - static_cast<double>(prec + 32);

    // corrections: B_{2j}/(2j)! * (s)_{2j-1} * X^(-s-2j+1)
    Jet poch{s, BigReal::from(1, wp)};  // (s)_1 = s
    BigReal inv_x2 = pow_si(big_x, -2);
    Jet xrun = power_jet(big_x, s, 1, wp);  // X^(-s-2j+1) = X^(1-s) * X^(-2j)
    double last_log2 = 1e9;
    bool done = false;
    for (long j = 1; j <= 200000; ++j) {
      xrun = Jet{xrun.f * inv_x2, xrun.d * inv_x2};
      if (j > 1) {
        // extend (s)_{2j-3} to (s)_{2j-1}
        Jet f1{s + (2 * j - 3), BigReal::from(1, wp)};
        Jet f2{s + (2 * j - 2), BigReal::from(1, wp)};
        poch = poch * f1 * f2;
      }
      Jet term = xrun * poch * em_coefficient(static_cast<unsigned>(j), wp);
      double mag = std::max(log2_abs(term.f), log2_abs(term.d));
      acc = acc + term;
      if (mag < target_log2) {
        done = true;
        break;
      }
      if (j > 8 && mag > last_log2 + 2) break;  // divergence onset
      last_log2 = mag;
    }
    if (done) return {acc.f.round_to(prec + 32), acc.d.round_to(prec + 32)};
  }
  throw AccuracyError("hurwitz Euler-Maclaurin did not reach the target", 0.0);
}

}  // namespace

std::pair<BigReal, BigReal> hurwitz_jet(const BigReal& s, const BigReal& x, long prec) {
  Jet j = hurwitz_core(s, x, prec);
  return {j.f.round_to(prec), j.d.round_to(prec)};
}

BigReal hurwitz(const BigReal& s, const BigReal& x, int deriv, long prec) {
  Jet j = hurwitz_core(s, x, prec);
  return (deriv == 0 ? j.f : j.d).round_to(prec);
}

BigReal log_gamma(const BigReal& x, long prec) {
  long wp = prec + 32;
  BigReal d = hurwitz(BigReal(wp), x.round_to(wp), 1, wp);
  return (d + BigReal::log_2pi(wp) / 2).round_to(prec);
}

BigReal digamma(const BigReal& x, long prec) {
  if (x.sign() <= 0) throw std::domain_error("digamma needs x > 0");
  long wp = prec + 64;
  double q_target = std::max(16.0, 0.25 * static_cast<double>(prec + 64));
  const double target_log2 = -static_cast<double>(prec + 16);

  for (int attempt = 0; attempt < 10; ++attempt, q_target *= 1.8) {
    long shift = 0;
    if (x.to_double() < q_target) shift = static_cast<long>(q_target - x.to_double()) + 1;
    BigReal xs = x.round_to(wp) + shift;
    BigReal acc = log(xs) - pow_si(xs * 2, -1);
    // - sum_j B_{2j}/(2j) xs^(-2j)
    BigReal inv_x2 = pow_si(xs, -2);
    BigReal xpow = BigReal::from(1, wp);
    BigReal fact = BigReal::from(1, wp);  // (2j-1)!
    bool done = false;
    double last_log2 = 1e9;
    for (long j = 1; j <= 100000; ++j) {
      xpow = xpow * inv_x2;
      if (j > 1) fact = fact * (2 * j - 2) * (2 * j - 1);
      BigReal term = em_coefficient(static_cast<unsigned>(j), wp) * fact * xpow;
      acc = acc - term;
      double mag = log2_abs(term);
      if (mag < target_log2) {
        done = true;
        break;
      }
      if (j > 8 && mag > last_log2 + 2) break;
      last_log2 = mag;
    }
    if (!done) continue;
    // psi(x) = psi(x + shift) - sum_{i=0}^{shift-1} 1/(x+i)
    for (long i = 0; i < shift; ++i) acc = acc - pow_si(x.round_to(wp) + i, -1);
    return acc.round_to(prec);
  }
  throw AccuracyError("digamma series did not reach the target", 0.0);
}

Rat barnes_zeta_value(unsigned m, const std::vector<Rat>& a, const std::vector<Rat>& x) {
  for (const Rat& ai : a)
    if (ai <= 0) throw std::invalid_argument("barnes_zeta_value needs positive parameters");
  return formal_zeta<Rat>(m, a, x, Rat(1));
}

namespace {

// zeta(s, (a1), z) jet: a1^(-s) zeta_H(s, z/a1).
Jet barnes_r1_jet(const BigReal& s, const BigReal& a1, const BigReal& z, long prec) {
  long wp = prec + 32;
  Jet apow = power_jet(a1.round_to(wp), s.round_to(wp), 0, wp);
  Jet h = hurwitz_core(s, z / a1, prec);
  return apow * h;
}

// zeta(s, (a1, a2), z) jet by head sum and Euler-Maclaurin tail in the
// second parameter direction.
Jet barnes_r2_jet(const BigReal& s0, const BigReal& a1, const BigReal& a2, const BigReal& z,
                  long prec) {
  long wp = prec + 96;
  BigReal s = s0.round_to(wp);
  BigReal one = BigReal::from(1, wp);
  if (abs(s - one) < BigReal::pow2(-prec / 2, wp) ||
      abs(s - (one + 1)) < BigReal::pow2(-prec / 2, wp))
    throw PoleError("s too close to a pole of the double zeta");

  const double ratio = std::max(1.0, (a2 / a1).to_double());
  double u_target = std::max(10.0, 0.35 * static_cast<double>(prec + 64) * ratio);
  const double target_log2 = -static_cast<double>(prec + 24);

  for (int attempt = 0; attempt < 8; ++attempt, u_target *= 1.8) {
    long shift_count =
        std::max<long>(0, static_cast<long>((u_target * a1.to_double() - z.to_double()) /
                                            a2.to_double()) +
                              1);
    BigReal u = (z + a2 * shift_count) / a1;

    Jet apow = power_jet(a1, s, 0, wp);  // a1^(-s)
    Jet acc{BigReal(wp), BigReal(wp)};
    for (long m = 0; m < shift_count; ++m)
      acc = acc + hurwitz_core(s, (z + a2 * m) / a1, prec);

    // integral term (a1/a2) zeta_H(s-1, u)/(s-1)
    Jet s_minus_1{s - one, one};
    acc = acc + Jet{hurwitz_core(s - one, u, prec)} * Jet::constant(a1 / a2, wp) / s_minus_1;
    // half term
    acc = acc + hurwitz_core(s, u, prec) * BigReal::from(rat(1, 2), wp);

    // corrections: B_{2j}/(2j)! (a2/a1)^(2j-1) (s)_{2j-1} zeta_H(s+2j-1, u)
    BigReal ratio_pow = a2 / a1;
    BigReal ratio2 = ratio_pow * ratio_pow;
    // second-order jet of the Pochhammer for the removable singularities
    BigReal P = s, Pd = one, Pdd(wp);
    bool done = false;
    double last_log2 = 1e9;
    for (long j = 1; j <= 200000; ++j) {
      if (j > 1) {
        ratio_pow = ratio_pow * ratio2;
        for (long step = 2 * j - 3; step <= 2 * j - 2; ++step) {
          BigReal f = s + step;
          // (P, Pd, Pdd) *= (f, 1, 0)
          Pdd = Pdd * f + Pd * 2;
          Pd = Pd * f + P;
          P = P * f;
        }
      }
      BigReal inner_s = s + (2 * j - 1);
      Jet term{BigReal(wp), BigReal(wp)};
      if (abs(inner_s - one) < BigReal::pow2(-8, wp)) {
        // (s)_{2j-1} has a simple zero cancelling the zeta_H pole at 1:
        // (s)_{2j-1} zeta_H(s+2j-1, u) -> {P'(s0), P''(s0)/2 - P'(s0) psi(u)}
        if (!(abs(inner_s - one) < BigReal::pow2(-prec / 2, wp)))
          throw PoleError("s sits near (but not at) an interior pole");
        BigReal psi = digamma(u, prec);
        Jet h{Pd, Pdd / 2 - Pd * psi};
        term = h * em_coefficient(static_cast<unsigned>(j), wp) * ratio_pow;
      } else {
        Jet h = hurwitz_core(inner_s, u, prec);
        term = Jet{P, Pd} * h * em_coefficient(static_cast<unsigned>(j), wp) * ratio_pow;
      }
      acc = acc + term;
      double mag = std::max(log2_abs(term.f), log2_abs(term.d));
      if (mag < target_log2) {
        done = true;
        break;
      }
      if (j > 8 && mag > last_log2 + 2) break;
      last_log2 = mag;
    }
    if (done) return apow * acc;
  }
  throw AccuracyError("double Barnes zeta tail did not reach the target", 0.0);
}

}  // namespace

BigReal barnes_zeta_s(const BigReal& s, const std::vector<BigReal>& a, const std::vector<Rat>& x,
                      int deriv, long prec) {
  if (a.empty() || a.size() > 2) throw std::invalid_argument("r must be 1 or 2");
  if (a.size() != x.size()) throw std::invalid_argument("len(a) != len(x)");
  long wp = prec + 64;
  for (const BigReal& ai : a)
    if (ai.sign() <= 0) throw std::invalid_argument("parameters must be positive");
  BigReal z(wp);
  for (size_t i = 0; i < a.size(); ++i) z += a[i].round_to(wp) * BigReal::from(x[i], wp);
  if (z.sign() <= 0) throw std::invalid_argument("z = x.a must be positive");

  Jet out = a.size() == 1 ? barnes_r1_jet(s.round_to(wp), a[0].round_to(wp), z, wp)
                          : barnes_r2_jet(s.round_to(wp), a[0].round_to(wp), a[1].round_to(wp),
                                          z, wp);
  return (deriv == 0 ? out.f : out.d).round_to(prec);
}

BigReal barnes_deriv0(const std::vector<BigReal>& a, const std::vector<Rat>& x, long prec) {
  for (const Rat& xi : x)
    if (xi <= 0 || xi > 1) throw std::invalid_argument("shift coordinates must lie in (0,1]");
  return barnes_zeta_s(BigReal(prec + 64), a, x, 1, prec);
}

}  // namespace sst
