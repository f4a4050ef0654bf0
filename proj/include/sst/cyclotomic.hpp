#pragma once

#include <map>

#include "sst/bigcomplex.hpp"
#include "sst/rational.hpp"

namespace sst {

/// Exact element of a cyclotomic field, stored as a rational combination of
/// roots of unity e^(2*pi*i*t) indexed by exponents t in Q/Z. Supports the
/// exact zero test needed for character sums and L-values at 0.
class CycSum {
 public:
  CycSum() = default;

  static CycSum root(const Rat& exponent, const Rat& coeff = Rat(1)) {
    CycSum s;
    s.add_term(exponent, coeff);
    return s;
  }

  static CycSum rational(const Rat& value) { return root(Rat(0), value); }

  void add_term(Rat exponent, const Rat& coeff) {
    if (coeff == 0) return;
    exponent -= Rat(rat_floor(exponent));
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  CycSum& operator+=(const CycSum& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  CycSum& scale(const Rat& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend CycSum operator*(const CycSum& a, const CycSum& b) {
    CycSum out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }

  CycSum conjugate() const {
    CycSum out;
    for (const auto& [e, c] : terms_) out.add_term(-e, c);
    return out;
  }

  bool structurally_zero() const { return terms_.empty(); }

  /// Exact zero test: reduce the exponent polynomial modulo the cyclotomic
  /// polynomial of the common root order.
  bool is_zero() const;

  /// Exact equality with a rational.
  bool equals_rational(const Rat& value) const {
    CycSum diff = *this;
    diff.add_term(Rat(0), -value);
    return diff.is_zero();
  }

  BigComplex eval(long prec) const {
    BigComplex acc(prec);
    for (const auto& [e, c] : terms_)
      acc = acc + root_of_unity(e, prec) * BigReal::from(c, prec);
    return acc;
  }

  const std::map<Rat, Rat>& terms() const { return terms_; }

 private:
  std::map<Rat, Rat> terms_;  // exponent in [0,1) -> coefficient
};

/// n-th cyclotomic polynomial, exact integer coefficients.
std::vector<Int> cyclotomic_poly(unsigned long n);

}  // namespace sst
