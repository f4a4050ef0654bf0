#pragma once

#include <string>

#include "sst/barnes.hpp"
#include "sst/cones.hpp"

namespace sst {

/// Everything needed to evaluate the class invariants: the ray class,
/// the auxiliary ideal a_c, and a cone decomposition D.
struct ClassContext {
  const RayClassGroup* group = nullptr;
  RayClass c;
  QuadIdeal a_c;
  ConeSet domain;

  const QuadField& field() const { return group->field(); }
  const Modulus& modulus() const { return group->modulus(); }
};

/// Default context: the standard Shintani domain and a_c = (1).
ClassContext standard_context(const RayClassGroup& group, RayClass c);

/// G + W + V at one real embedding, with the choices that produced it.
struct XValue {
  BigReal g;
  BigReal w;
  BigReal v;
  BigReal x;  // g + w + v as computed
  int iota = 1;
  std::string context_hash;
};

std::string context_hash(const ClassContext& ctx);

/// Sum over the cone decomposition of log Gamma(iota(x v^t), iota(v)).
BigReal g_invariant(const ClassContext& ctx, int iota, long prec);

/// -log_iota(a_c m) times the exact zeta(0, ...) sum over the R-sets.
BigReal w_invariant(const ClassContext& ctx, int iota, long prec);

/// Formal V-invariant sum; 1-dimensional cones contribute 0.
BigReal v_invariant(const ClassContext& ctx, int iota, long prec);

XValue x_invariant(const ClassContext& ctx, int iota, long prec);

/// Exact zeta(0, c): the R-set sum of zeta(0, v, x), rational when the
/// domain is a Shintani domain.
Rat zeta0_exact(const ClassContext& ctx);

/// zeta'(0, c) = X(c, iota_1) + X(c, iota_2).
BigReal zeta_deriv0(const ClassContext& ctx, long prec);

/// G + W + V over R-sets paired with the conjugate class at embedding n;
/// the domain may dip below zero in the iota_n coordinate and iota must
/// differ from n.
BigReal x_paired(const ClassContext& ctx, int n, int iota, long prec);

/// Exact zeta(0) sum of the paired R-sets, as a field element.
QuadElem zeta0_paired_field(const ClassContext& ctx, int n);

struct ReconstructionResult {
  bool found = false;
  Rat q;
  BigReal raw;       // the log combination L
  BigReal residual;  // |L - q log iota(eps_plus)|
};

/// exp(X(c, iota_i)) exp(X(c_j c, iota_i)) as a rational power of the
/// totally positive fundamental unit: reconstructs q with denominator <=
/// max_den and reports the residual.
ReconstructionResult verify_unit_product(const RayClassGroup& group, RayClass c, int i, int j,
                                         long prec, long max_den = 10000);

/// X difference between two admissible (domain, a_c) choices, reconstructed
/// as a rational multiple of log iota(eps_plus); the multiplier must agree
/// at both embeddings.
struct ChoiceIndependenceResult {
  ReconstructionResult at[2];
  bool consistent = false;
};

ChoiceIndependenceResult verify_choice_independence(const ClassContext& a, const ClassContext& b,
                                                    long prec, long max_den = 10000);

}  // namespace sst
