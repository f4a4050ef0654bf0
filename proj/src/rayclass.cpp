#include "sst/rayclass.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

namespace sst {

namespace {

// Height scan order: 0, 1, ..., h, -1, ..., -h with max(|a|,|b|) == h.
template <class Fn>
bool scan_coords(long max_height, Fn&& fn) {
  auto seq = [](long h) {
    std::vector<long> out;
    for (long v = 0; v <= h; ++v) out.push_back(v);
    for (long v = 1; v <= h; ++v) out.push_back(-v);
    return out;
  };
  for (long h = 1; h <= max_height; ++h) {
    auto values = seq(h);
    for (long b : values)
      for (long a : values) {
        if (std::max(std::abs(a), std::abs(b)) != h) continue;
        if (fn(a, b)) return true;
      }
  }
  return false;
}

Rat mod_one(Rat t) {
  t -= Rat(rat_floor(t));
  return t;
}

}  // namespace

Modulus make_modulus(const QuadField& field, const QuadElem& gen, bool inf1, bool inf2) {
  QuadIdeal m = make_ideal(field, gen);
  if (!m.is_integral_ideal()) throw std::invalid_argument("modulus ideal must be integral");
  return Modulus{m, inf1, inf2};
}

Modulus make_modulus(const QuadField& field, long n, bool inf1, bool inf2) {
  return make_modulus(field, QuadElem{field.d, Rat(n), Rat(0)}, inf1, inf2);
}

RayClassGroup::RayClassGroup(const QuadField& field, Modulus f)
    : field_(field), f_(std::move(f)), places_(f_.places()) {
  if (!f_.finite.is_integral_ideal())
    throw std::invalid_argument("modulus ideal must be integral");
  const QuadElem w = f_.finite.gen;

  // Lattice of (w) in coordinates a + b*omega.
  auto c1 = integral_coords(w);
  auto c2 = integral_coords(w * field.omega);
  Int s, t;
  mpz_gcdext(lat_g_.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c1.second.get_mpz_t(),
             c2.second.get_mpz_t());
  assert(lat_g_ > 0);
  lat_u_ = {s * c1.first + t * c2.first, lat_g_};
  Int det = c1.first * c2.second - c2.first * c1.second;
  lat_tx_ = abs(det) / lat_g_;
  assert(lat_tx_ > 0);

  // Unit residues of O/(w).
  for (Int a(0); a < lat_tx_; ++a) {
    for (Int b(0); b < lat_g_; ++b) {
      QuadElem e = field.from_coords(a, b);
      if (!generate_unit_ideal(field, {e, w})) continue;
      unit_index_[{a, b}] = static_cast<int>(unit_residues_.size());
      unit_residues_.push_back({a, b});
    }
  }
  unit_mul_.assign(unit_residues_.size(), std::vector<int>(unit_residues_.size(), -1));
  for (size_t i = 0; i < unit_residues_.size(); ++i)
    for (size_t j = 0; j < unit_residues_.size(); ++j) {
      QuadElem prod = elem_of_coords(unit_residues_[i]) * elem_of_coords(unit_residues_[j]);
      unit_mul_[i][j] = unit_index_.at(reduce_coords(prod));
    }

  // Image of the unit group {-1, fundamental unit} in A.
  const int a_total = static_cast<int>(unit_residues_.size()) << places_.size();
  std::set<int> unit_image;
  {
    std::vector<int> frontier{a_of_element(field.one()),
                              a_of_element(-field.one()),
                              a_of_element(field.fundamental_unit)};
    std::set<int> seen(frontier.begin(), frontier.end());
    while (!frontier.empty()) {
      int x = frontier.back();
      frontier.pop_back();
      for (int y : std::set<int>(seen)) {
        int p = a_mul(x, y);
        if (seen.insert(p).second) frontier.push_back(p);
      }
    }
    unit_image = std::move(seen);
  }

  // Classes: orbits of A under the unit image, numbered in representative
  // height-scan order so small generators come first.
  orbit_of_.assign(a_total, -1);
  int assigned = 0;
  scan_coords(4 * (a_total + 4), [&](long a, long b) {
    QuadElem e = field.from_coords(Int(a), Int(b));
    if (e.is_zero() || !generate_unit_ideal(field, {e, w})) return false;
    int idx = a_of_element(e);
    if (orbit_of_[idx] != -1) return assigned == a_total;
    int cls = static_cast<int>(class_elem_.size());
    for (int u : unit_image) {
      int member = a_mul(idx, u);
      assert(orbit_of_[member] == -1 || orbit_of_[member] == cls);
      if (orbit_of_[member] == -1) {
        orbit_of_[member] = cls;
        ++assigned;
      }
    }
    class_elem_.push_back(idx);
    reps_.push_back(e);
    return assigned == a_total;
  });
  if (assigned != a_total) throw SearchBoundError("class representative scan exhausted");
  assert(static_cast<size_t>(a_total) == class_elem_.size() * unit_image.size());
  assert(orbit_of_[a_of_element(field.one())] == 0);
}

std::pair<Int, Int> RayClassGroup::reduce_coords(const QuadElem& e) const {
  auto [a, b] = integral_coords(e);
  Int k;
  mpz_fdiv_q(k.get_mpz_t(), b.get_mpz_t(), lat_g_.get_mpz_t());
  a -= k * lat_u_.first;
  b -= k * lat_g_;
  Int am;
  mpz_fdiv_r(am.get_mpz_t(), a.get_mpz_t(), lat_tx_.get_mpz_t());
  return {am, b};
}

QuadElem RayClassGroup::elem_of_coords(const std::pair<Int, Int>& ab) const {
  return field_.from_coords(ab.first, ab.second);
}

int RayClassGroup::a_index(int unit_index, unsigned mask) const {
  return (unit_index << places_.size()) | static_cast<int>(mask);
}

int RayClassGroup::a_mul(int x, int y) const {
  const unsigned mask_bits = (1u << places_.size()) - 1;
  int ux = x >> places_.size(), uy = y >> places_.size();
  unsigned mx = static_cast<unsigned>(x) & mask_bits, my = static_cast<unsigned>(y) & mask_bits;
  return a_index(unit_mul_[ux][uy], mx ^ my);
}

int RayClassGroup::a_of_element(const QuadElem& alpha) const {
  auto res = reduce_coords(alpha);
  auto it = unit_index_.find(res);
  if (it == unit_index_.end())
    throw std::invalid_argument("element not coprime to the modulus");
  unsigned mask = 0;
  for (size_t j = 0; j < places_.size(); ++j)
    if (sign_at(alpha, places_[j]) < 0) mask |= 1u << j;
  return a_index(it->second, mask);
}

RayClass RayClassGroup::mul(RayClass a, RayClass b) const {
  return RayClass{orbit_of_[a_mul(class_elem_[a.index], class_elem_[b.index])]};
}

RayClass RayClassGroup::inverse(RayClass a) const {
  for (int j = 0; j < size(); ++j)
    if (mul(a, RayClass{j}) == identity()) return RayClass{j};
  throw std::logic_error("no inverse; group table broken");
}

RayClass RayClassGroup::power(RayClass a, long e) const {
  if (e < 0) return power(inverse(a), -e);
  RayClass acc = identity();
  RayClass base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

long RayClassGroup::order_of(RayClass a) const {
  RayClass acc = a;
  for (long k = 1; k <= size(); ++k) {
    if (acc == identity()) return k;
    acc = mul(acc, a);
  }
  throw std::logic_error("order exceeds group size");
}

long RayClassGroup::exponent() const {
  long e = 1;
  for (int i = 0; i < size(); ++i) e = std::lcm(e, order_of(RayClass{i}));
  return e;
}

RayClass RayClassGroup::class_of_element(const QuadElem& alpha) const {
  if (!is_integral(alpha)) throw std::invalid_argument("class_of_element needs an integral element");
  return RayClass{orbit_of_[a_of_element(alpha)]};
}

RayClass RayClassGroup::class_of(const QuadIdeal& a) const {
  const QuadElem& g = a.gen;
  if (is_integral(g)) return class_of_element(g);
  // Fractional: find integral beta with g*beta integral and both factors
  // coprime to the modulus; then [g] = [g beta] - [beta].
  const QuadElem w = f_.finite.gen;
  RayClass out = identity();
  bool found = scan_coords(4096, [&](long ca, long cb) {
    QuadElem beta = field_.from_coords(Int(ca), Int(cb));
    if (beta.is_zero()) return false;
    QuadElem prod = g * beta;
    if (!is_integral(prod)) return false;
    if (!coprime_elements(field_, beta, w) || !coprime_elements(field_, prod, w)) return false;
    out = mul(class_of_element(prod), inverse(class_of_element(beta)));
    return true;
  });
  if (!found) throw SearchBoundError("no coprime decomposition found for fractional ideal");
  return out;
}

QuadElem RayClassGroup::representative_coprime_to(RayClass c, const QuadIdeal& extra) const {
  const QuadElem w = f_.finite.gen;
  QuadElem out = field_.one();
  bool found = scan_coords(4096, [&](long ca, long cb) {
    QuadElem e = field_.from_coords(Int(ca), Int(cb));
    if (e.is_zero()) return false;
    if (!coprime_elements(field_, e, w) || !coprime_elements(field_, e, extra.gen)) return false;
    if (!(class_of_element(e) == c)) return false;
    out = e;
    return true;
  });
  if (!found) throw SearchBoundError("representative search exhausted");
  return out;
}

QuadElem RayClassGroup::find_nu(int i) const {
  if ((i == 1 && !f_.inf1) || (i == 2 && !f_.inf2))
    throw std::invalid_argument("oo_i is not part of the modulus");
  const QuadElem w = f_.finite.gen;
  const int other = i == 1 ? 2 : 1;
  QuadElem out = field_.one();
  bool found = scan_coords(4096, [&](long ca, long cb) {
    QuadElem nu = field_.one() + w * field_.from_coords(Int(ca), Int(cb));
    if (nu.is_zero()) return false;
    if (sign_at(nu, i) >= 0 || sign_at(nu, other) <= 0) return false;
    out = nu;
    return true;
  });
  if (!found) throw SearchBoundError("nu search exhausted; enlarge bound");
  return out;
}

RayClass RayClassGroup::conjugation_class(int i) const {
  if ((i == 1 && !f_.inf1) || (i == 2 && !f_.inf2)) return identity();
  return class_of_element(find_nu(i));
}

std::vector<RayClass> RayClassGroup::kernel_of_sub_modulus(
    const QuadIdeal& sub_finite, const std::vector<int>& sub_places) const {
  if (!ideal_contains(sub_finite, f_.finite.gen))
    throw std::invalid_argument("sub-modulus finite part must divide the modulus");
  for (int p : sub_places)
    if (std::find(places_.begin(), places_.end(), p) == places_.end())
      throw std::invalid_argument("sub-modulus place not in the modulus");

  std::set<int> classes;
  const unsigned mask_count = 1u << places_.size();
  for (size_t u = 0; u < unit_residues_.size(); ++u) {
    QuadElem e = elem_of_coords(unit_residues_[u]);
    if (!ideal_contains(sub_finite, e - field_.one())) continue;
    for (unsigned mask = 0; mask < mask_count; ++mask) {
      bool ok = true;
      for (size_t j = 0; j < places_.size() && ok; ++j)
        if ((mask >> j & 1u) &&
            std::find(sub_places.begin(), sub_places.end(), places_[j]) != sub_places.end())
          ok = false;
      if (ok) classes.insert(orbit_of_[a_index(static_cast<int>(u), mask)]);
    }
  }
  std::vector<RayClass> out;
  for (int c : classes) out.push_back(RayClass{c});
  return out;
}

std::vector<QuadIdeal> RayClassGroup::finite_divisors() const {
  const QuadElem w = f_.finite.gen;
  // Prime elements dividing w, with multiplicities.
  std::vector<std::pair<QuadElem, int>> primes;
  QuadElem rem = w;
  Rat norm_rat = f_.finite.norm();
  assert(is_integer(norm_rat));
  Int n = norm_rat.get_num();

  std::vector<long> rational_primes;
  Int m = n;
  for (long p = 2; Int(p) * p <= m; ++p)
    if (m % p == 0) {
      rational_primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) {
    if (!m.fits_slong_p()) throw SearchBoundError("modulus norm factor too large");
    rational_primes.push_back(m.get_si());
  }

  BigReal eps1 = embed(field_.totally_positive_unit, 1, 64);
  for (long p : rational_primes) {
    // Candidate prime elements above p.
    std::vector<QuadElem> cands;
    long bound = (sqrt(BigReal::from(Int(p), 64)) * (eps1 + 2)).floor_to_int().get_si() + 2;
    for (long a = -bound; a <= bound && cands.empty(); ++a)
      for (long b = -bound; b <= bound; ++b) {
        QuadElem e = field_.from_coords(Int(a), Int(b));
        Rat nn = e.norm();
        if (nn == p || nn == -p) {
          cands.push_back(e);
          break;
        }
      }
    if (cands.empty()) {
      cands.push_back(QuadElem{field_.d, Rat(p), Rat(0)});  // inert
    } else {
      QuadElem pi = cands.front();
      QuadElem pib = pi.conj();
      if (!ideal_contains(make_ideal(field_, pi), pib)) cands.push_back(pib);
    }
    for (const QuadElem& pi : cands) {
      int e = 0;
      while (is_integral(rem / pi)) {
        rem = rem / pi;
        ++e;
      }
      if (e > 0) primes.emplace_back(pi, e);
    }
  }
  assert(abs(rem.norm()) == 1);

  std::vector<QuadIdeal> divisors{make_ideal(field_, 1)};
  for (const auto& [pi, emax] : primes) {
    std::vector<QuadIdeal> next;
    for (const QuadIdeal& dvr : divisors) {
      QuadElem acc = dvr.gen;
      for (int e = 0; e <= emax; ++e) {
        next.push_back(make_ideal(field_, acc));
        acc = acc * pi;
      }
    }
    divisors = std::move(next);
  }
  std::sort(divisors.begin(), divisors.end(),
            [](const QuadIdeal& a, const QuadIdeal& b) { return a.norm() < b.norm(); });
  return divisors;
}

Modulus RayClassGroup::character_conductor(const Character& chi) const {
  struct Candidate {
    QuadIdeal finite;
    std::vector<int> places;
  };
  std::vector<Candidate> valid;
  for (const QuadIdeal& dvr : finite_divisors()) {
    const unsigned subsets = 1u << places_.size();
    for (unsigned sub = 0; sub < subsets; ++sub) {
      std::vector<int> sp;
      for (size_t j = 0; j < places_.size(); ++j)
        if (sub >> j & 1u) sp.push_back(places_[j]);
      bool trivial = true;
      for (RayClass k : kernel_of_sub_modulus(dvr, sp))
        if (chi.exponent[k.index] != 0) {
          trivial = false;
          break;
        }
      if (trivial) valid.push_back(Candidate{dvr, sp});
    }
  }
  assert(!valid.empty());  // the full modulus always qualifies
  auto smaller = [](const Candidate& a, const Candidate& b) {
    if (a.finite.norm() != b.finite.norm()) return a.finite.norm() < b.finite.norm();
    return a.places.size() < b.places.size();
  };
  const Candidate* best = &valid.front();
  for (const Candidate& c : valid)
    if (smaller(c, *best)) best = &c;
#ifndef NDEBUG
  for (const Candidate& c : valid) {
    assert(ideal_contains(best->finite, c.finite.gen));
    for (int p : best->places)
      assert(std::find(c.places.begin(), c.places.end(), p) != c.places.end());
  }
#endif
  Modulus cond;
  cond.finite = best->finite;
  cond.inf1 = std::find(best->places.begin(), best->places.end(), 1) != best->places.end();
  cond.inf2 = std::find(best->places.begin(), best->places.end(), 2) != best->places.end();
  return cond;
}

void RayClassGroup::build_characters() const {
  const int n = size();
  // Chain of cyclic extensions covering the group.
  std::vector<int> gens;
  std::vector<long> rel_ord;
  std::vector<std::vector<unsigned>> hvec;          // gen^rel_ord factored over earlier gens
  std::map<int, std::vector<unsigned>> factored{{0, {}}};

  while (static_cast<int>(factored.size()) < n) {
    int g = -1;
    for (int c = 0; c < n && g < 0; ++c)
      if (!factored.count(c)) g = c;
    // Relative order of g over the covered subgroup.
    long d = 1;
    RayClass acc{g};
    while (!factored.count(acc.index)) {
      acc = mul(acc, RayClass{g});
      ++d;
    }
    std::vector<unsigned> h = factored.at(acc.index);
    std::map<int, std::vector<unsigned>> extended;
    for (const auto& [elem, vec] : factored) {
      RayClass cur{elem};
      for (long e = 0; e < d; ++e) {
        std::vector<unsigned> v = vec;
        v.resize(gens.size(), 0);
        v.push_back(static_cast<unsigned>(e));
        extended[cur.index] = v;
        cur = mul(cur, RayClass{g});
      }
    }
    h.resize(gens.size(), 0);
    gens.push_back(g);
    rel_ord.push_back(d);
    hvec.push_back(h);
    factored = std::move(extended);
  }
  for (auto& [elem, vec] : factored) vec.resize(gens.size(), 0);

  // All exponent assignments on the chain generators.
  characters_.clear();
  std::vector<long> j(gens.size(), 0);
  for (;;) {
    std::vector<Rat> t(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
      Rat th(0);
      for (size_t l = 0; l < i; ++l) th += Rat(static_cast<long>(hvec[i][l])) * t[l];
      t[i] = mod_one((mod_one(th) + Rat(j[i])) / Rat(rel_ord[i]));
    }
    Character chi;
    chi.exponent.resize(n);
    for (const auto& [elem, vec] : factored) {
      Rat e(0);
      for (size_t l = 0; l < gens.size(); ++l) e += Rat(static_cast<long>(vec[l])) * t[l];
      chi.exponent[elem] = mod_one(e);
    }
    long ord = 1;
    for (const Rat& e : chi.exponent) ord = std::lcm(ord, e.get_den().get_si());
    chi.order = ord;
    Rat half(1, 2);
    chi.totally_odd = true;
    for (int place : {1, 2})
      if (chi.exponent[conjugation_class(place).index] != half) chi.totally_odd = false;
    chi.conductor = character_conductor(chi);
    characters_.push_back(std::move(chi));

    size_t pos = 0;
    while (pos < j.size()) {
      if (++j[pos] < rel_ord[pos]) break;
      j[pos++] = 0;
    }
    if (pos == j.size()) break;
  }
  assert(static_cast<int>(characters_.size()) == n);
  characters_built_ = true;
}

const std::vector<Character>& RayClassGroup::characters() const {
  if (!characters_built_) build_characters();
  return characters_;
}

}  // namespace sst
