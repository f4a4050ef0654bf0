#pragma once

#include <optional>
#include <vector>

#include "sst/bigreal.hpp"
#include "sst/rational.hpp"

namespace sst {

struct UnsupportedFieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact element p + q*sqrt(d) of the real quadratic field Q(sqrt(d)).
struct QuadElem {
  long d = 0;
  Rat p;
  Rat q;

  QuadElem() = default;
  QuadElem(long d_, Rat p_, Rat q_) : d(d_), p(std::move(p_)), q(std::move(q_)) {}

  bool is_zero() const { return p == 0 && q == 0; }
  bool is_rational() const { return q == 0; }

  QuadElem conj() const { return {d, p, -q}; }
  Rat norm() const { return p * p - q * q * Rat(d); }
  Rat trace() const { return Rat(2) * p; }

  friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
    check_same(a, b);
    return {a.d, a.p + b.p, a.q + b.q};
  }
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b) {
    check_same(a, b);
    return {a.d, a.p - b.p, a.q - b.q};
  }
  friend QuadElem operator-(const QuadElem& a) { return {a.d, -a.p, -a.q}; }
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    check_same(a, b);
    return {a.d, a.p * b.p + a.q * b.q * Rat(a.d), a.p * b.q + a.q * b.p};
  }
  friend QuadElem operator/(const QuadElem& a, const QuadElem& b) {
    check_same(a, b);
    Rat n = b.norm();
    if (n == 0) throw std::domain_error("division by zero field element");
    QuadElem num = a * b.conj();
    return {a.d, num.p / n, num.q / n};
  }
  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.d == b.d && a.p == b.p && a.q == b.q;
  }

  static void check_same(const QuadElem& a, const QuadElem& b) {
    if (a.d != b.d) throw std::invalid_argument("mixed quadratic fields");
  }
};

inline QuadElem mul_scalar(const QuadElem& v, const Rat& c) { return {v.d, v.p * c, v.q * c}; }

/// Exact sign of iota_which(e), which = 1 for +sqrt(d), 2 for -sqrt(d).
int sign_at(const QuadElem& e, int which);

inline bool is_totally_positive(const QuadElem& e) {
  if (e.is_zero()) throw std::domain_error("zero has no signs");
  return sign_at(e, 1) > 0 && sign_at(e, 2) > 0;
}

/// Compares iota_1(a) with iota_1(b) exactly.
inline int compare_at_1(const QuadElem& a, const QuadElem& b) {
  QuadElem diff = a - b;
  if (diff.is_zero()) return 0;
  return sign_at(diff, 1);
}

/// Numeric embedding with correctly rounded sqrt(d).
BigReal embed(const QuadElem& e, int which, long prec);

/// True when e lies in the ring of integers of Q(sqrt(d)).
bool is_integral(const QuadElem& e);

struct QuadField;

/// Fractional ideal of a narrow-class-number-one field, stored by its
/// canonical totally positive generator. Canonical means the power of the
/// totally positive fundamental unit minimizing |log i1(g) - log i2(g)|
/// (ties resolved toward the smaller exponent).
struct QuadIdeal {
  QuadElem gen;

  bool is_integral_ideal() const { return is_integral(gen); }
  Rat norm() const { return abs(gen.norm()); }

  friend bool operator==(const QuadIdeal& a, const QuadIdeal& b) { return a.gen == b.gen; }

 private:
  static Rat abs(Rat r) { return r < 0 ? Rat(-r) : r; }
};

/// Real quadratic field of squarefree d > 1 with narrow class number one.
struct QuadField {
  long d = 0;
  QuadElem omega;                 // ring generator: sqrt(d) or (1+sqrt(d))/2
  QuadElem fundamental_unit;      // > 1 under iota_1
  QuadElem totally_positive_unit; // smallest totally positive unit > 1
  Int discriminant;

  QuadElem one() const { return {d, Rat(1), Rat(0)}; }
  QuadElem from_coords(const Int& a, const Int& b) const {
    // a + b*omega
    return QuadElem{d, Rat(a), Rat(0)} + mul_scalar(omega, Rat(b));
  }
  QuadElem sqrt_d() const { return {d, Rat(0), Rat(1)}; }
};

/// Builds the field, computing the fundamental unit by Pell search and
/// verifying narrow class number one. Throws UnsupportedFieldError.
QuadField make_field(long d);

/// Canonical ideal from any nonzero generator.
QuadIdeal make_ideal(const QuadField& field, const QuadElem& gen);
QuadIdeal make_ideal(const QuadField& field, long n);

QuadIdeal ideal_mul(const QuadField& field, const QuadIdeal& a, const QuadIdeal& b);
QuadIdeal ideal_inv(const QuadField& field, const QuadIdeal& a);

/// z in (gen): exact membership test.
bool ideal_contains(const QuadIdeal& a, const QuadElem& z);

/// Coordinates (a, b) of an integral element as a + b*omega.
std::pair<Int, Int> integral_coords(const QuadElem& e);

/// True iff the integral elements generate the unit ideal (2-row HNF test).
bool generate_unit_ideal(const QuadField& field, const std::vector<QuadElem>& gens);

/// (z) + (w) = O for integral z, w.
bool coprime_elements(const QuadField& field, const QuadElem& z, const QuadElem& w);
bool coprime_ideals(const QuadField& field, const QuadIdeal& a, const QuadIdeal& b);

/// log iota_which of the canonical generator; additive on ideal products.
BigReal log_iota(const QuadField& field, const QuadIdeal& a, int which, long prec);

/// The exponent k with canonical(g) = g * eps_plus^k, exposed for tests.
long canonical_unit_exponent(const QuadField& field, const QuadElem& positive_gen);

}  // namespace sst
