#pragma once

#include <vector>

#include "sst/bernoulli.hpp"
#include "sst/rational.hpp"

namespace sst {

/// Arguments for the formal multiple zeta value at 1-m: parameter vector a
/// (nonzero entries) and shift vector x of the same length r >= 0.
struct FmlArgs {
  unsigned m = 1;
  std::vector<Rat> a;
  std::vector<Rat> x;

  void validate() const {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (a.size() != x.size()) throw std::invalid_argument("len(a) != len(x)");
    for (const Rat& ai : a)
      if (ai == 0) throw std::invalid_argument("zero entry in a");
  }
};

inline Rat mul_scalar(const Rat& v, const Rat& c) { return v * c; }

namespace detail {

// Iterates all r-tuples of non-negative integers summing to total.
template <class Fn>
void for_each_composition(unsigned total, unsigned r, std::vector<unsigned>& l, Fn&& fn) {
  if (r == 0) {
    if (total == 0) fn(l);
    return;
  }
  if (r == 1) {
    l.push_back(total);
    fn(l);
    l.pop_back();
    return;
  }
  for (unsigned first = 0; first <= total; ++first) {
    l.push_back(first);
    for_each_composition(total - first, r - 1, l, fn);
    l.pop_back();
  }
}

}  // namespace detail

/// Value of the Bernoulli-polynomial sum
///   (-1)^r (m-1)! sum_{|l| = m+r-1} prod_i B_{l_i}(x_i) a_i^(l_i - 1) / l_i!
/// over any coefficient ring T holding the a_i (exact rationals, quadratic
/// field elements, or big floats). `one` supplies the multiplicative
/// identity of T. An unsatisfiable index sum gives the empty sum 0.
template <class T>
T formal_zeta(unsigned m, const std::vector<T>& a, const std::vector<Rat>& x, const T& one) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (a.size() != x.size()) throw std::invalid_argument("len(a) != len(x)");
  const unsigned r = static_cast<unsigned>(a.size());
  const unsigned total = m + r - 1;

  const Rat zero_rat(0);
  T sum = mul_scalar(one, zero_rat);

  // B_k(x_i)/k! for k = 0..total, per coordinate.
  std::vector<std::vector<Rat>> bern(r);
  for (unsigned i = 0; i < r; ++i) {
    bern[i].reserve(total + 1);
    Rat fact(1);
    for (unsigned k = 0; k <= total; ++k) {
      if (k > 0) fact *= Rat(k);
      bern[i].push_back(bernoulli_poly(k, x[i]) / fact);
    }
  }

  std::vector<unsigned> l;
  detail::for_each_composition(total, r, l, [&](const std::vector<unsigned>& idx) {
    Rat coeff(1);
    T prod = one;
    for (unsigned i = 0; i < r; ++i) {
      coeff *= bern[i][idx[i]];
      if (idx[i] == 0) {
        prod = prod / a[i];
      } else {
        for (unsigned e = 1; e < idx[i]; ++e) prod = prod * a[i];
      }
    }
    if (coeff != 0) sum = sum + mul_scalar(prod, coeff);
  });

  Rat lead = Rat(factorial(m - 1));
  if (r % 2 == 1) lead = -lead;
  return mul_scalar(sum, lead);
}

/// Exact rational formal multiple zeta value at 1-m.
inline Rat zeta_fml(const FmlArgs& args) {
  args.validate();
  return formal_zeta<Rat>(args.m, args.a, args.x, Rat(1));
}

inline Rat zeta_fml(unsigned m, std::vector<Rat> a, std::vector<Rat> x) {
  FmlArgs args{m, std::move(a), std::move(x)};
  return zeta_fml(args);
}

}  // namespace sst
