#include "sst/stark.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace sst {

int CongruenceData::coset_of(RayClass c) const {
  for (size_t i = 0; i < cosets.size(); ++i)
    if (std::find(cosets[i].begin(), cosets[i].end(), c) != cosets[i].end())
      return static_cast<int>(i);
  throw std::logic_error("class not in any coset");
}

int CongruenceData::label_index(int label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw std::invalid_argument("unknown coset label");
}

CongruenceData make_congruence(const RayClassGroup& group,
                               const std::vector<RayClass>& subgroup) {
  CongruenceData cd;
  cd.group = &group;
  std::set<int> sub;
  for (RayClass c : subgroup) sub.insert(c.index);
  if (!sub.count(group.identity().index))
    throw std::invalid_argument("subgroup must contain the identity class");
  for (RayClass a : subgroup)
    for (RayClass b : subgroup)
      if (!sub.count(group.mul(a, b).index))
        throw std::invalid_argument("class list is not closed under multiplication");
  for (int i : sub) cd.subgroup.push_back(RayClass{i});

  std::set<int> seen;
  for (int c = 0; c < group.size(); ++c) {
    if (seen.count(c)) continue;
    std::vector<RayClass> coset;
    for (RayClass h : cd.subgroup) {
      RayClass m = group.mul(RayClass{c}, h);
      if (seen.insert(m.index).second) coset.push_back(m);
    }
    std::sort(coset.begin(), coset.end());
    if (coset.size() != cd.subgroup.size())
      throw std::invalid_argument("cosets do not partition the group evenly");
    cd.labels.push_back(coset.front().index);
    cd.cosets.push_back(std::move(coset));
  }
  return cd;
}

BigReal partial_zeta_deriv0(const CongruenceData& cd, int label, long prec) {
  long wp = prec + 16;
  BigReal acc(wp);
  const auto& coset = cd.cosets[cd.label_index(label)];
  for (RayClass c : coset) acc += zeta_deriv0(standard_context(*cd.group, c), wp);
  return acc.round_to(prec);
}

BigReal stark_unit(const CongruenceData& cd, int label, long prec) {
  return exp(partial_zeta_deriv0(cd, label, prec + 16)).round_to(prec);
}

CycSum L0(const Character& chi, const RayClassGroup& group) {
  CycSum acc;
  for (int c = 0; c < group.size(); ++c) {
    Rat z0 = zeta0_exact(standard_context(group, RayClass{c}));
    acc.add_term(chi.exponent[c], z0);
  }
  return acc;
}

namespace {

// Character of the quotient pushed through the conductor's ray class group:
// chi'(class of alpha in C_f') = chi(class of alpha in C_f).
Character push_to_conductor(const Character& chi, const RayClassGroup& group,
                            const RayClassGroup& cond_group) {
  Character out;
  out.order = chi.order;
  out.totally_odd = chi.totally_odd;
  out.conductor = chi.conductor;
  out.exponent.resize(cond_group.size());
  for (int c = 0; c < cond_group.size(); ++c) {
    QuadElem rep =
        cond_group.representative_coprime_to(RayClass{c}, group.modulus().finite);
    out.exponent[c] = chi.exponent[group.class_of_element(rep).index];
  }
  return out;
}

}  // namespace

GkValue gk_exponent(RayClass tau, const CongruenceData& cd, long prec) {
  const RayClassGroup& group = *cd.group;
  long wp = prec + 32;

  // Quotient order and the complex-conjugation coset.
  const long quotient_order = static_cast<long>(cd.cosets.size());
  int rho1 = cd.coset_of(group.conjugation_class(1));
  int rho2 = cd.coset_of(group.conjugation_class(2));
  if (rho1 != rho2)
    throw std::invalid_argument("conjugation classes disagree; quotient field is not CM");
  if (rho1 == 0) throw std::invalid_argument("quotient field is totally real");

  GkValue out;
  int tau_coset = cd.coset_of(tau);
  long mu = tau_coset == 0 ? 1 : (tau_coset == rho1 ? -1 : 0);
  out.pi_power = rat(-mu, 2);

  BigComplex acc(wp);
  for (const Character& chi : group.characters()) {
    // characters of the quotient: trivial on the subgroup
    bool factors = true;
    for (RayClass h : cd.subgroup)
      if (chi.exponent[h.index] != 0) {
        factors = false;
        break;
      }
    if (!factors || !chi.totally_odd) continue;

    CycSum l0;
    BigComplex inner(wp);
    if (chi.conductor == group.modulus()) {
      l0 = L0(chi, group);
      for (int c = 0; c < group.size(); ++c) {
        BigReal xc = x_invariant(standard_context(group, RayClass{c}), 1, wp).x;
        inner = inner + chi.value_numeric(RayClass{c}, wp) * xc;
      }
    } else {
      RayClassGroup cond_group(group.field(), chi.conductor);
      Character pushed = push_to_conductor(chi, group, cond_group);
      l0 = L0(pushed, cond_group);
      for (int c = 0; c < cond_group.size(); ++c) {
        BigReal xc = x_invariant(standard_context(cond_group, RayClass{c}), 1, wp).x;
        inner = inner + pushed.value_numeric(RayClass{c}, wp) * xc;
      }
    }
    if (l0.is_zero()) throw std::domain_error("vanishing L(0, chi) divisor");
    acc = acc + chi.value_numeric(tau, wp) * inner / l0.eval(wp);
  }
  out.exponent = BigComplex(acc.re / quotient_order, acc.im / quotient_order);
  out.exponent = BigComplex(out.exponent.re.round_to(prec), out.exponent.im.round_to(prec));
  return out;
}

int kronecker(Int a, Int n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

BigReal example_constant_log_G(long prec) {
  if (prec < 128) throw std::invalid_argument("prec must be >= 128");
  long wp = prec + 32;
  BigReal acc = log_gamma(BigReal::from(rat(1, 4), wp), wp) -
                log_gamma(BigReal::from(rat(3, 4), wp), wp);
  for (long a = 1; a <= 19; ++a) {
    int psi = kronecker(Int(-20), Int(a));
    if (psi == 0) continue;
    BigReal lg = log_gamma(BigReal::from(rat(a, 20), wp), wp);
    acc += (lg * psi) / 4;
  }
  return acc.round_to(prec);
}

BigReal example_constant_G(long prec) {
  return exp(example_constant_log_G(prec + 16)).round_to(prec);
}

}  // namespace sst
