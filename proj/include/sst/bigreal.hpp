#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "sst/rational.hpp"

namespace sst {

/// Arbitrary-precision binary float tagged with its working precision in
/// bits. Arithmetic results carry the minimum precision of the operands.
class BigReal {
 public:
  static constexpr long kMinPrec = 64;

  BigReal() : BigReal(kMinPrec) {}

  explicit BigReal(long prec) {
    mpfr_init2(v_, clamp(prec));
    mpfr_set_zero(v_, 1);
  }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, kMinPrec);
    mpfr_set_nan(o.v_);
  }

  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  static BigReal from(long value, long prec) {
    BigReal r(prec);
    mpfr_set_si(r.v_, value, MPFR_RNDN);
    return r;
  }

  static BigReal from(const Int& value, long prec) {
    BigReal r(prec);
    mpfr_set_z(r.v_, value.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  static BigReal from(const Rat& value, long prec) {
    BigReal r(prec);
    mpfr_set_q(r.v_, value.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  static BigReal from_str(const std::string& s, long prec) {
    BigReal r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("unparsable real: " + s);
    return r;
  }

  static BigReal pi(long prec) {
    BigReal r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  static BigReal euler(long prec) {
    BigReal r(prec);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
  }

  /// log(2*pi) at the given precision.
  static BigReal log_2pi(long prec) {
    BigReal r = pi(prec + 8);
    mpfr_mul_ui(r.v_, r.v_, 2, MPFR_RNDN);
    mpfr_log(r.v_, r.v_, MPFR_RNDN);
    return r.round_to(prec);
  }

  long prec() const { return mpfr_get_prec(v_); }

  BigReal round_to(long prec) const {
    BigReal r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  int sign() const { return mpfr_sgn(v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Nearest integer, exact in mpz.
  Int round_to_int() const {
    mpfr_t t;
    mpfr_init2(t, std::max<long>(prec(), kMinPrec));
    mpfr_round(t, v_);
    Int out;
    mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDZ);
    mpfr_clear(t);
    return out;
  }

  Int floor_to_int() const {
    mpfr_t t;
    mpfr_init2(t, std::max<long>(prec(), kMinPrec));
    mpfr_floor(t, v_);
    Int out;
    mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDZ);
    mpfr_clear(t);
    return out;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
  BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
  BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
  BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

  friend BigReal operator*(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator+(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, long b) {
    BigReal r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  int cmp(const BigReal& o) const { return mpfr_cmp(v_, o.v_); }
  friend bool operator<(const BigReal& a, const BigReal& b) { return a.cmp(b) < 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const BigReal& a, const BigReal& b) { return a.cmp(b) == 0; }

  friend BigReal log(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal exp(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal sqrt(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal abs(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal pow_si(const BigReal& a, long e) {
    BigReal r(a.prec());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend BigReal pow(const BigReal& a, const BigReal& e) {
    BigReal r(join(a, e));
    mpfr_pow(r.v_, a.v_, e.v_, MPFR_RNDN);
    return r;
  }
  friend void sin_cos(BigReal& s, BigReal& c, const BigReal& a) {
    s = BigReal(a.prec());
    c = BigReal(a.prec());
    mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
  }

  /// 2^e as a BigReal (e may be negative): the usual tolerance shape.
  static BigReal pow2(long e, long prec) {
    BigReal r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  /// Deterministic scientific decimal form with the given significant digits.
  std::string to_string(size_t digits = 0) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  static long clamp(long prec) { return std::max<long>(prec, kMinPrec); }
  static long join(const BigReal& a, const BigReal& b) { return std::min(a.prec(), b.prec()); }

  mpfr_t v_;
};

inline BigReal mul_scalar(const BigReal& v, const Rat& c) {
  return v * BigReal::from(c, v.prec());
}

/// Decimal digit count that a binary precision can support.
inline size_t decimal_digits_for(long prec_bits) {
  return static_cast<size_t>(static_cast<double>(prec_bits) * 0.30102999566398119) + 1;
}

inline long bits_for_decimal_digits(long digits) {
  return static_cast<long>(static_cast<double>(digits) * 3.3219280948873623) + 16;
}

}  // namespace sst
