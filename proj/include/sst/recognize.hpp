#pragma once

#include <optional>
#include <vector>

#include "sst/bigreal.hpp"
#include "sst/rational.hpp"

namespace sst {

struct Lattice {
  std::vector<std::vector<Int>> basis;  // row vectors
};

struct DependentBasisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// delta-LLL reduction with exact integer arithmetic (fraction-free
/// Gram-Schmidt); delta in (1/4, 1).
Lattice lll(const Lattice& lattice, const Rat& delta = rat(3, 4));

enum class RecogStatus { Found, None, Inconclusive };

struct RelationResult {
  RecogStatus status = RecogStatus::None;
  std::vector<Int> coeffs;
  BigReal residual;
};

/// Small integer vector m with |sum m_i x_i| < 2^(-prec/2) and
/// |m_i| <= max_coeff, via LLL on the scaled relation lattice. The residual
/// bound is re-checked at full precision, never assumed. Inconclusive
/// signals that prec cannot resolve relations of the requested height.
RelationResult integer_relation(const std::vector<BigReal>& xs, const Int& max_coeff, long prec);

struct AlgdepResult {
  RecogStatus status = RecogStatus::None;
  std::vector<Int> poly;  // low-first, content 1, positive leading coefficient
  BigReal residual;       // |p(x)| re-evaluated at doubled precision
  Int height;
};

/// Integer polynomial of degree <= max_deg and height <= max_height nearly
/// vanishing at x.
AlgdepResult algdep(const BigReal& x, unsigned max_deg, const Int& max_height, long prec);

/// Continued-fraction convergent p/q with q <= max_den and
/// |x - p/q| < 1/(2 q max_den); nullopt when no convergent qualifies.
std::optional<Rat> rational_reconstruct(const BigReal& x, long max_den);

/// Exact rational value of a binary float (mantissa times power of two).
Rat exact_rational_of(const BigReal& x);

}  // namespace sst
