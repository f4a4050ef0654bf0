#pragma once

#include "sst/invariants.hpp"

namespace sst {

/// Partition of a ray class group by a subgroup: the Galois correspondence
/// data supplied as an explicit class list.
struct CongruenceData {
  const RayClassGroup* group = nullptr;
  std::vector<RayClass> subgroup;
  std::vector<std::vector<RayClass>> cosets;  // each sorted; cosets[0] = subgroup
  std::vector<int> labels;                    // smallest class index in each coset

  int coset_of(RayClass c) const;
  int label_index(int label) const;  // position of the coset with this label
};

/// Validates closure and builds the coset partition.
CongruenceData make_congruence(const RayClassGroup& group, const std::vector<RayClass>& subgroup);

/// Sum of zeta'(0, c) over the labelled coset (standard Shintani domain,
/// a_c = (1)).
BigReal partial_zeta_deriv0(const CongruenceData& cd, int label, long prec);

/// exp of the partial zeta derivative at 0.
BigReal stark_unit(const CongruenceData& cd, int label, long prec);

/// Exact L(0, chi) = sum_c chi(c) zeta(0, c) in the cyclotomic field.
CycSum L0(const Character& chi, const RayClassGroup& group);

/// Exponent part of the absolute period symbol: the character-weighted
/// X(c)-sum over totally odd characters of the quotient group, divided by
/// the quotient order. The pi power -mu(tau)/2 is kept separate and exact.
struct GkValue {
  BigComplex exponent;
  Rat pi_power;
};

GkValue gk_exponent(RayClass tau, const CongruenceData& cd, long prec);

/// Gamma(1/4)/Gamma(3/4) * prod_a Gamma(a/20)^(psi(a)/4) with psi the
/// quadratic character of discriminant -20; the worked-example constant.
BigReal example_constant_log_G(long prec);
BigReal example_constant_G(long prec);

/// Kronecker symbol (a|n), fully general.
int kronecker(Int a, Int n);

}  // namespace sst
