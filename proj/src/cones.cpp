#include "sst/cones.hpp"

#include <algorithm>
#include <cassert>

namespace sst {

Cone::Cone(std::vector<QuadElem> b) : basis(std::move(b)) {
  if (basis.empty() || basis.size() > 2) throw std::invalid_argument("cone dimension must be 1 or 2");
  for (const QuadElem& v : basis) {
    if (v.is_zero()) throw std::invalid_argument("zero basis vector");
    if (!is_integral(v)) throw std::invalid_argument("cone basis must be integral");
  }
  if (basis.size() == 2 && cross(basis[0], basis[1]) == 0)
    throw DegenerateBasisError("basis not independent over R");
}

Rat cross(const QuadElem& v, const QuadElem& w) {
  QuadElem::check_same(v, w);
  return v.p * w.q - v.q * w.p;
}

std::optional<std::vector<Rat>> cone_coordinates(const Cone& cone, const QuadElem& z) {
  if (cone.dim() == 1) {
    QuadElem ratio = z / cone.basis[0];
    if (ratio.q != 0) return std::nullopt;
    return std::vector<Rat>{ratio.p};
  }
  const QuadElem& v1 = cone.basis[0];
  const QuadElem& v2 = cone.basis[1];
  Rat det = cross(v1, v2);
  Rat x1 = (z.p * v2.q - v2.p * z.q) / det;
  Rat x2 = (v1.p * z.q - z.p * v1.q) / det;
  return std::vector<Rat>{x1, x2};
}

bool cone_contains(const Cone& cone, const QuadElem& z) {
  auto x = cone_coordinates(cone, z);
  if (!x) return false;
  for (const Rat& xi : *x)
    if (xi <= 0) return false;
  return true;
}

ConeSet scale_cone_set(const ConeSet& set, const QuadElem& factor) {
  ConeSet out;
  out.weights = set.weights;
  for (const Cone& c : set.cones) {
    std::vector<QuadElem> basis;
    for (const QuadElem& v : c.basis) basis.push_back(v * factor);
    out.cones.emplace_back(std::move(basis));
  }
  return out;
}

bool verify_disjoint(const ConeSet& set) {
  // Complete for open rays and open sectors of angle < pi: two sectors
  // overlap iff a boundary ray of one lies strictly inside the other or
  // one midpoint lies inside the other; a ray meets a sector iff it lies
  // strictly inside it; two rays meet iff they coincide.
  auto intersects = [](const Cone& a, const Cone& b) {
    if (a.dim() == 1 && b.dim() == 1) return cone_contains(a, b.basis[0]);
    if (a.dim() == 1) return cone_contains(b, a.basis[0]);
    if (b.dim() == 1) return cone_contains(a, b.basis[0]);
    for (const QuadElem& z : b.basis)
      if (cone_contains(a, z)) return true;
    for (const QuadElem& z : a.basis)
      if (cone_contains(b, z)) return true;
    return cone_contains(a, b.basis[0] + b.basis[1]) ||
           cone_contains(b, a.basis[0] + a.basis[1]);
  };
  for (size_t i = 0; i < set.cones.size(); ++i)
    for (size_t j = i + 1; j < set.cones.size(); ++j)
      if (intersects(set.cones[i], set.cones[j])) return false;
  return true;
}

ConeSet shintani_domain(const QuadField& field) {
  ConeSet d;
  d.cones.emplace_back(std::vector<QuadElem>{field.one()});
  d.cones.emplace_back(std::vector<QuadElem>{field.one(), field.totally_positive_unit});
  return d;
}

std::vector<RSetEntry> r_set(const RayClassGroup& group, RayClass c, const QuadIdeal& a_c,
                             const Cone& cone, std::optional<int> pair_with_conjugate) {
  const QuadField& field = group.field();
  const QuadElem w = group.modulus().finite.gen;

  // Cone position check: totally positive basis, or positive away from the
  // paired embedding.
  for (const QuadElem& v : cone.basis) {
    if (pair_with_conjugate) {
      int keep = *pair_with_conjugate == 1 ? 2 : 1;
      if (sign_at(v, keep) <= 0)
        throw std::invalid_argument("cone leaves the allowed half space");
    } else if (!is_totally_positive(v)) {
      throw std::invalid_argument("cone basis must be totally positive in unpaired mode");
    }
  }

  std::vector<RayClass> allowed{c};
  if (pair_with_conjugate) {
    RayClass twisted = group.mul(group.conjugation_class(*pair_with_conjugate), c);
    if (!(twisted == c)) allowed.push_back(twisted);
  }

  // z = gamma*(k + l*omega) with gamma generating (a_c m)^-1; then
  // (z a_c m) = (k + l*omega).
  QuadElem gamma = field.one() / (a_c.gen * w);

  std::vector<RSetEntry> out;
  auto classify = [&](const std::vector<Rat>& x, const QuadElem& beta) {
    for (const Rat& xi : x)
      if (xi <= 0 || xi > 1) return;
    if (!coprime_elements(field, beta, w)) return;
    RayClass cls = group.class_of_element(beta);
    for (RayClass a : allowed)
      if (cls == a) {
        out.push_back(RSetEntry{x});
        return;
      }
  };

  if (cone.dim() == 1) {
    // x*v in gamma*O with x rational: x ranges over c0*Z for an exact c0.
    QuadElem eta = cone.basis[0] / gamma;
    Rat u1, u2;
    if ((field.d - 1) % 4 == 0) {
      u1 = eta.q * 2;
      u2 = eta.p - eta.q;
    } else {
      u1 = eta.p;
      u2 = eta.q;
    }
    auto step_of = [](const Rat& u) -> std::optional<Rat> {
      if (u == 0) return std::nullopt;
      Rat inv = Rat(1) / u;
      return inv < 0 ? Rat(-inv) : inv;  // (1/u)Z as a positive generator
    };
    std::optional<Rat> s1 = step_of(u1), s2 = step_of(u2);
    Rat step;
    if (s1 && s2) {
      // lcm of p1/q1 and p2/q2 = lcm(p1,p2)/gcd(q1,q2)
      step = rat(lcm(s1->get_num(), s2->get_num()), gcd(s1->get_den(), s2->get_den()));
    } else if (s1 || s2) {
      step = s1 ? *s1 : *s2;
    } else {
      throw std::logic_error("zero basis vector in r_set");
    }
    for (Rat x = step; x <= 1; x += step) {
      QuadElem beta = mul_scalar(eta, x);
      assert(is_integral(beta));
      classify({x}, beta);
    }
    return out;
  }

  // dim 2: integer points (k,l) with x-coordinates of gamma*(k+l*omega)
  // inside the half-open unit box. Bounding box from the box corners.
  const QuadElem& v1 = cone.basis[0];
  const QuadElem& v2 = cone.basis[1];
  Int kmin, kmax, lmin, lmax;
  bool first = true;
  for (int c1 = 0; c1 <= 1; ++c1)
    for (int c2 = 0; c2 <= 1; ++c2) {
      QuadElem corner = mul_scalar(v1, Rat(c1)) + mul_scalar(v2, Rat(c2));
      QuadElem t = corner / gamma;  // = k + l*omega with rational k,l
      Rat lr, kr;
      if ((field.d - 1) % 4 == 0) {
        lr = t.q * 2;
        kr = t.p - t.q;
      } else {
        kr = t.p;
        lr = t.q;
      }
      Int kf = rat_floor(kr), kc = rat_ceil(kr);
      Int lf = rat_floor(lr), lc = rat_ceil(lr);
      if (first) {
        kmin = kf;
        kmax = kc;
        lmin = lf;
        lmax = lc;
        first = false;
      } else {
        kmin = std::min(kmin, kf);
        kmax = std::max(kmax, kc);
        lmin = std::min(lmin, lf);
        lmax = std::max(lmax, lc);
      }
    }

  for (Int k = kmin; k <= kmax; ++k)
    for (Int l = lmin; l <= lmax; ++l) {
      QuadElem beta = field.from_coords(k, l);
      if (beta.is_zero()) continue;
      QuadElem z = gamma * beta;
      auto x = cone_coordinates(Cone{{v1, v2}}, z);
      assert(x);
      classify(*x, beta);
    }
  std::sort(out.begin(), out.end(),
            [](const RSetEntry& a, const RSetEntry& b) { return a.x < b.x; });
  return out;
}

ConeSet refine(const Cone& cone, RefineCase which, long param) {
  ConeSet out;
  switch (which) {
    case RefineCase::Permute: {
      std::vector<QuadElem> rev(cone.basis.rbegin(), cone.basis.rend());
      out.cones.emplace_back(std::move(rev));
      return out;
    }
    case RefineCase::ScaleFirst: {
      if (param < 1) throw std::invalid_argument("scale factor must be a positive integer");
      std::vector<QuadElem> b = cone.basis;
      b[0] = mul_scalar(b[0], Rat(param));
      out.cones.emplace_back(std::move(b));
      return out;
    }
    case RefineCase::SplitFirstPair: {
      if (cone.dim() != 2) throw std::invalid_argument("split needs a 2-dimensional cone");
      const QuadElem& v1 = cone.basis[0];
      const QuadElem& v2 = cone.basis[1];
      QuadElem mid = v1 + v2;
      out.cones.emplace_back(std::vector<QuadElem>{v1, mid});
      out.cones.emplace_back(std::vector<QuadElem>{mid, v2});
      out.cones.emplace_back(std::vector<QuadElem>{mid});
      return out;
    }
  }
  throw std::invalid_argument("invalid refinement case");
}

QuadElem find_mixed_sign_element(const QuadField& field) {
  for (long h = 1; h <= 4096; ++h) {
    std::optional<QuadElem> best;
    Rat best_trace;
    for (long b = -h; b <= h; ++b)
      for (long a = -h; a <= h; ++a) {
        if (std::max(std::abs(a), std::abs(b)) != h) continue;
        QuadElem e = field.from_coords(Int(a), Int(b));
        if (e.is_zero()) continue;
        if (sign_at(e, 1) <= 0 || sign_at(e, 2) >= 0) continue;
        Rat tr = e.trace();
        if (!best || tr < best_trace) {
          best = e;
          best_trace = tr;
        }
      }
    if (best) return *best;
  }
  throw SearchBoundError("mixed-sign element scan exhausted");
}

TransportDecomposition transport_decomposition(const QuadField& field) {
  TransportDecomposition t;
  t.domain = shintani_domain(field);
  t.nu = find_mixed_sign_element(field);
  t.unit = field.totally_positive_unit;
  t.wedge.cones.emplace_back(std::vector<QuadElem>{field.one()});
  t.wedge.cones.emplace_back(std::vector<QuadElem>{field.one(), t.nu});
  t.wedge.cones.emplace_back(std::vector<QuadElem>{t.nu});
  return t;
}

long multiplicity(const QuadElem& z, const std::vector<std::pair<const ConeSet*, long>>& sets) {
  if (z.is_zero()) throw std::invalid_argument("multiplicity of the origin is not defined");
  long total = 0;
  for (const auto& [set, weight] : sets)
    for (size_t i = 0; i < set->cones.size(); ++i)
      if (cone_contains(set->cones[i], z)) total += weight * set->weight(i);
  return total;
}

}  // namespace sst
