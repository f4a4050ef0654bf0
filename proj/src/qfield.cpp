#include "sst/qfield.hpp"

#include <cassert>

namespace sst {

namespace {

bool squarefree(long d) {
  for (long f = 2; f * f <= d; ++f)
    if (d % (f * f) == 0) return false;
  return true;
}

bool perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

struct Col {
  Int x, y;
};

// True iff the lattice spanned by the columns is all of Z^2.
bool spans_z2(std::vector<Col> cols) {
  // Clear the y-row to a single gcd entry via Bezout combinations.
  Int g(0);
  Col pivot{Int(0), Int(0)};
  for (const Col& c : cols) {
    if (c.y == 0) continue;
    if (g == 0) {
      g = abs(c.y);
      pivot = c;
      if (pivot.y < 0) {
        pivot.x = -pivot.x;
        pivot.y = -pivot.y;
      }
      continue;
    }
    Int s, t, ng;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), c.y.get_mpz_t());
    pivot = Col{s * pivot.x + t * c.x, ng};
    g = ng;
  }
  Int h(0);
  for (const Col& c : cols) {
    Int x = c.x;
    if (g != 0) x -= (c.y / g) * pivot.x;  // c.y is a multiple of g after reduction
    h = gcd(h, x);
  }
  // Residual x-entries are only correct when y's are multiples of g, which
  // holds since g is the gcd of all y's.
  return abs(g) == 1 && abs(h) == 1;
}

}  // namespace

int sign_at(const QuadElem& e, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("embedding index must be 1 or 2");
  Rat t = which == 1 ? e.q : Rat(-e.q);
  int sp = sgn(e.p);
  int st = sgn(t);
  if (st == 0) return sp;
  if (sp == 0) return st;
  if (sp == st) return sp;
  // p and t*sqrt(d) compete: |p| vs |t| sqrt(d), exactly via squares.
  Rat p2 = e.p * e.p;
  Rat t2d = t * t * Rat(e.d);
  int c = cmp(p2, t2d);
  if (c == 0) throw std::logic_error("sqrt(d) rational; d not squarefree?");
  return c > 0 ? sp : st;
}

BigReal embed(const QuadElem& e, int which, long prec) {
  long wp = prec + 16;
  BigReal root = sqrt(BigReal::from(Int(e.d), wp));
  BigReal qv = BigReal::from(e.q, wp);
  if (which == 2) qv = -qv;
  return (BigReal::from(e.p, wp) + qv * root).round_to(prec);
}

bool is_integral(const QuadElem& e) {
  if ((e.d - 1) % 4 == 0) return is_integer(e.q * Rat(2)) && is_integer(e.p - e.q);
  return is_integer(e.p) && is_integer(e.q);
}

QuadField make_field(long d) {
  if (d <= 1) throw UnsupportedFieldError("d must be > 1");
  if (!squarefree(d)) throw UnsupportedFieldError("d must be squarefree");

  QuadField f;
  f.d = d;
  const bool one_mod_4 = (d % 4 == 1);
  f.omega = one_mod_4 ? QuadElem{d, rat(1, 2), rat(1, 2)} : QuadElem{d, Rat(0), Rat(1)};
  f.discriminant = one_mod_4 ? Int(d) : Int(4 * d);

  // Fundamental unit: smallest b > 0 with d b^2 -+ (4 or 1) a perfect square.
  const long kSearchLimit = 2'000'000;
  bool found = false;
  for (long b = 1; b <= kSearchLimit && !found; ++b) {
    Int db2 = Int(d) * b * b;
    Int a;
    if (one_mod_4) {
      if (perfect_square(db2 - 4, a) || perfect_square(db2 + 4, a)) {
        f.fundamental_unit = QuadElem{d, rat(a, 2), rat(b, 2)};
        found = true;
      }
    } else {
      if (perfect_square(db2 - 1, a) || perfect_square(db2 + 1, a)) {
        f.fundamental_unit = QuadElem{d, Rat(a), Rat(b)};
        found = true;
      }
    }
  }
  if (!found) throw UnsupportedFieldError("fundamental unit search exceeded bound");
  Rat unit_norm = f.fundamental_unit.norm();
  assert(unit_norm == 1 || unit_norm == -1);

  if (unit_norm == -1) {
    f.totally_positive_unit = f.fundamental_unit * f.fundamental_unit;
  } else {
    // h+ = 2h when the fundamental unit is totally positive.
    throw UnsupportedFieldError("narrow class number != 1 (fundamental unit has norm +1)");
  }
  assert(is_totally_positive(f.totally_positive_unit));

  // Class number one check over the Minkowski bound: every split or
  // ramified prime below the bound must have an element of that norm.
  BigReal disc_root = sqrt(BigReal::from(f.discriminant, 64));
  long bound = (disc_root / 2).floor_to_int().get_si();
  BigReal eps1 = embed(f.totally_positive_unit, 1, 64);
  for (long p = 2; p <= bound; ++p) {
    bool prime = p >= 2;
    for (long q = 2; q * q <= p && prime; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;

    bool has_prime_of_norm_p;
    if (p == 2) {
      long dm8 = ((d % 8) + 8) % 8;
      has_prime_of_norm_p = (f.discriminant % 2 == 0) || dm8 == 1;
    } else {
      Int dm(f.discriminant % p);
      int legendre = mpz_legendre(dm.get_mpz_t(), Int(p).get_mpz_t());
      has_prime_of_norm_p = legendre >= 0;
    }
    if (!has_prime_of_norm_p) continue;

    long coeff_bound =
        (sqrt(BigReal::from(Int(p), 64)) * (eps1 + 2)).floor_to_int().get_si() + 2;
    bool principal = false;
    for (long a = -coeff_bound; a <= coeff_bound && !principal; ++a) {
      for (long b = -coeff_bound; b <= coeff_bound && !principal; ++b) {
        QuadElem e = f.from_coords(Int(a), Int(b));
        Rat n = e.norm();
        if (n == p || n == -p) principal = true;
      }
    }
    if (!principal)
      throw UnsupportedFieldError("narrow class number != 1 (non-principal prime above " +
                                  std::to_string(p) + ")");
  }
  return f;
}

namespace {

// Exact comparison of |log iota_1(s)| for totally positive field values,
// via max(s, 1/s) in the iota_1 order.
QuadElem abs_ratio(const QuadElem& s) {
  QuadElem inv = QuadElem{s.d, Rat(1), Rat(0)} / s;
  return compare_at_1(s, inv) >= 0 ? s : inv;
}

int compare_abs_log(const QuadElem& sa, const QuadElem& sb) {
  return compare_at_1(abs_ratio(sa), abs_ratio(sb));
}

QuadElem pow_elem(const QuadElem& base, long e) {
  QuadElem acc{base.d, Rat(1), Rat(0)};
  QuadElem b = base;
  long n = e;
  if (n < 0) {
    b = acc / b;
    n = -n;
  }
  while (n > 0) {
    if (n & 1) acc = acc * b;
    b = b * b;
    n >>= 1;
  }
  return acc;
}

}  // namespace

long canonical_unit_exponent(const QuadField& field, const QuadElem& g) {
  assert(is_totally_positive(g));
  const QuadElem& eps = field.totally_positive_unit;
  // ratio(g * eps^k) under iota_1 equals rho * eps^(2k) with rho = g/conj(g).
  QuadElem rho = g / g.conj();
  BigReal lr = log(embed(rho, 1, 96));
  BigReal le = log(embed(eps, 1, 96));
  long k = (-(lr / (le * 2))).round_to_int().get_si();

  auto score = [&](long kk) { return rho * pow_elem(eps, 2 * kk); };
  // Local exact descent; prefer the smaller exponent on ties.
  for (;;) {
    int down = compare_abs_log(score(k - 1), score(k));
    if (down <= 0) {
      --k;
      continue;
    }
    int up = compare_abs_log(score(k + 1), score(k));
    if (up < 0) {
      ++k;
      continue;
    }
    break;
  }
  return k;
}

QuadIdeal make_ideal(const QuadField& field, const QuadElem& gen) {
  if (gen.is_zero()) throw std::invalid_argument("zero generator");
  QuadElem g = gen;
  int s1 = sign_at(g, 1), s2 = sign_at(g, 2);
  if (s1 < 0 && s2 < 0) {
    g = -g;
  } else if (s1 != s2) {
    g = g * field.fundamental_unit;  // norm -1 unit flips exactly one sign
    if (sign_at(g, 1) < 0) g = -g;
  }
  assert(is_totally_positive(g));
  long k = canonical_unit_exponent(field, g);
  return QuadIdeal{g * pow_elem(field.totally_positive_unit, k)};
}

QuadIdeal make_ideal(const QuadField& field, long n) {
  return make_ideal(field, QuadElem{field.d, Rat(n), Rat(0)});
}

QuadIdeal ideal_mul(const QuadField& field, const QuadIdeal& a, const QuadIdeal& b) {
  return make_ideal(field, a.gen * b.gen);
}

QuadIdeal ideal_inv(const QuadField& field, const QuadIdeal& a) {
  return make_ideal(field, QuadElem{a.gen.d, Rat(1), Rat(0)} / a.gen);
}

bool ideal_contains(const QuadIdeal& a, const QuadElem& z) {
  if (z.is_zero()) return true;
  return is_integral(z / a.gen);
}

std::pair<Int, Int> integral_coords(const QuadElem& e) {
  if (!is_integral(e)) throw std::invalid_argument("element not integral");
  if ((e.d - 1) % 4 == 0) {
    Rat b = e.q * Rat(2);
    Rat a = e.p - e.q;
    return {a.get_num(), b.get_num()};
  }
  return {e.p.get_num(), e.q.get_num()};
}

bool generate_unit_ideal(const QuadField& field, const std::vector<QuadElem>& gens) {
  std::vector<Col> cols;
  for (const QuadElem& g : gens) {
    auto c = integral_coords(g);
    auto co = integral_coords(g * field.omega);
    cols.push_back(Col{c.first, c.second});
    cols.push_back(Col{co.first, co.second});
  }
  return spans_z2(std::move(cols));
}

bool coprime_elements(const QuadField& field, const QuadElem& z, const QuadElem& w) {
  return generate_unit_ideal(field, {z, w});
}

bool coprime_ideals(const QuadField& field, const QuadIdeal& a, const QuadIdeal& b) {
  if (!a.is_integral_ideal() || !b.is_integral_ideal())
    throw std::invalid_argument("coprimality needs integral ideals");
  return coprime_elements(field, a.gen, b.gen);
}

BigReal log_iota(const QuadField& field, const QuadIdeal& a, int which, long prec) {
  (void)field;
  return log(embed(a.gen, which, prec + 16)).round_to(prec);
}

}  // namespace sst
