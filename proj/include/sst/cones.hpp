#pragma once

#include <optional>
#include <vector>

#include "sst/rayclass.hpp"

namespace sst {

struct DegenerateBasisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Open simplicial cone with basis of 1 or 2 integral elements,
/// linearly independent over R.
struct Cone {
  std::vector<QuadElem> basis;

  explicit Cone(std::vector<QuadElem> b);
  int dim() const { return static_cast<int>(basis.size()); }
};

/// p,q-coordinate cross product; nonzero iff independent over R.
Rat cross(const QuadElem& v, const QuadElem& w);

/// Exact coordinates of z in the cone basis, if z lies in the spanned
/// rational subspace (always for dim 2; for dim 1 only rational multiples).
std::optional<std::vector<Rat>> cone_coordinates(const Cone& cone, const QuadElem& z);

/// z in the open cone: all coordinates strictly positive.
bool cone_contains(const Cone& cone, const QuadElem& z);

/// Finite disjoint union of cones, optionally with signed multiplicities.
struct ConeSet {
  std::vector<Cone> cones;
  std::vector<long> weights;  // empty means all 1

  long weight(size_t i) const { return weights.empty() ? 1 : weights[i]; }
};

ConeSet scale_cone_set(const ConeSet& set, const QuadElem& factor);

/// Exact pairwise-disjointness check via cross membership of basis vectors
/// and sector midpoints (complete for sectors of angle < pi).
bool verify_disjoint(const ConeSet& set);

/// D = C(1) u C(1, eps_plus): fundamental domain for the totally positive
/// units acting on the totally positive quadrant.
ConeSet shintani_domain(const QuadField& field);

struct RSetEntry {
  std::vector<Rat> x;
};

/// Exact enumeration of x in (Q n (0,1])^r with sum x_i v_i in (a_c m)^-1
/// and the class of (z a_c m) equal to c; with pair_with_conjugate = n the
/// class may also be conjugation_class(n) * c and the cone may dip below
/// zero in the iota_n coordinate.
std::vector<RSetEntry> r_set(const RayClassGroup& group, RayClass c, const QuadIdeal& a_c,
                             const Cone& cone, std::optional<int> pair_with_conjugate = {});

enum class RefineCase { Permute, ScaleFirst, SplitFirstPair };

/// Permute basis / replace v1 by n*v1 / split C(v1,v2) into
/// C(v1,v1+v2) u C(v1+v2,v2) u C(v1+v2) (last cone only in dim 2).
ConeSet refine(const Cone& cone, RefineCase which, long param = 0);

/// Shintani domain D, a mixed-sign nu, the closed wedge X1 between the rays
/// of 1 and nu (as the disjoint union C(1) u C(1,nu) u C(nu)), and the
/// totally positive fundamental unit, satisfying the multiset identity
///   mult(D) + mult(nu D) + mult(unit X1) = mult(X1).
struct TransportDecomposition {
  ConeSet domain;
  QuadElem nu;
  ConeSet wedge;
  QuadElem unit;
};

TransportDecomposition transport_decomposition(const QuadField& field);

/// Deterministic mixed-sign element scan (iota_1 > 0 > iota_2): first
/// height with candidates, then minimal trace.
QuadElem find_mixed_sign_element(const QuadField& field);

/// Sum of weight * (number of cones of each set containing z).
long multiplicity(const QuadElem& z, const std::vector<std::pair<const ConeSet*, long>>& sets);

}  // namespace sst
