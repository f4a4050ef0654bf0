#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sst/formal_zeta.hpp"

namespace sst {

/// Identity families of the formal multiple zeta kernel, named by the
/// transformation each one states. The short aliases are the tokens the
/// CLI verify command reports.
enum class FmlIdentity {
  Reflection,         // abz1: negate a_1, x_1 -> 1-x_1, global sign flip
  BoundaryShift,      // abz2: x_1 = 0 vs x_1 = 1 plus the dropped-coordinate term
  Multiplication,     // abz3: distribute x_1 over n translates of a scaled a_1
  ConeSplitUpper,     // abz4: split along (a_1, a_1+a_2) / (a_1+a_2, a_2)
  ConeSplitLower,     // abz5: companion split with the shift on the other slot
  DiagonalSplit,      // abz6: equal-shift split with the lower-dimensional term
  ReflectionSum,      // abz7: three-term vanishing combination at x_1 = 1
  ProductDifference,  // prp: rational-function identity for product differences
};

const char* identity_name(FmlIdentity id);

struct ResampleNeeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact two-sided evaluation of one of the zeta-kernel identities.
/// For Multiplication, `n` is the distribution depth (>= 1).
bool check_identity(FmlIdentity id, unsigned m, const std::vector<Rat>& a,
                    const std::vector<Rat>& x, unsigned n = 2);

/// prp with t pairs: prod a_i b_i - prod a_i' b_i' expanded over the
/// cross-difference denominators. Throws ResampleNeeded when a denominator
/// a_i/a_j - a_i'/a_j' vanishes.
bool check_product_difference(const std::vector<Rat>& a, const std::vector<Rat>& a2,
                              const std::vector<Rat>& b, const std::vector<Rat>& b2);

/// Seeded random-input driver; numerators and denominators are bounded by
/// 100. Returns the number of failures (0 on success).
struct IdentitySuiteResult {
  std::string name;
  unsigned trials = 0;
  unsigned failures = 0;
  std::uint64_t seed = 0;
};

IdentitySuiteResult run_identity_suite(FmlIdentity id, unsigned trials, std::uint64_t seed);

/// Bounded random rational with |num| <= bound, 1 <= den <= bound.
Rat random_rat(std::mt19937_64& rng, long bound = 100, bool nonzero = false);

}  // namespace sst
