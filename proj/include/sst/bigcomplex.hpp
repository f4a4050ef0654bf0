#pragma once

#include "sst/bigreal.hpp"

namespace sst {

struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() = default;
  explicit BigComplex(long prec) : re(prec), im(prec) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

  long prec() const { return std::min(re.prec(), im.prec()); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigComplex& a, const BigReal& s) {
    return {a.re * s, a.im * s};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigReal n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  friend BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
  friend BigReal abs(const BigComplex& a) { return sqrt(a.re * a.re + a.im * a.im); }
};

/// e^(2*pi*i*t) for exact rational t.
inline BigComplex root_of_unity(const Rat& t, long prec) {
  long wp = prec + 16;
  BigReal angle = BigReal::pi(wp) * 2 * BigReal::from(t, wp);
  BigReal s(wp), c(wp);
  sin_cos(s, c, angle);
  return {c.round_to(prec), s.round_to(prec)};
}

}  // namespace sst
