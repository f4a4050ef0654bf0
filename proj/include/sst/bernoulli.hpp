#pragma once

#include <vector>

#include "sst/rational.hpp"

namespace sst {

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact Bernoulli numbers B_0..B_max with the B_1 = -1/2 convention,
/// so that B_l = B_l(0) for the polynomials below.
class BernoulliCache {
 public:
  explicit BernoulliCache(unsigned max_index = 64);

  unsigned max_index() const { return static_cast<unsigned>(table_.size()) - 1; }

  const Rat& number(unsigned l) const;

  /// B_l(x) = sum_k C(l,k) B_k x^(l-k).
  Rat poly(unsigned l, const Rat& x) const;

 private:
  std::vector<Rat> table_;
};

/// Shared read-only cache with the default bound.
const BernoulliCache& bernoulli_cache();

inline Rat bernoulli_number(unsigned l) { return bernoulli_cache().number(l); }
inline Rat bernoulli_poly(unsigned l, const Rat& x) { return bernoulli_cache().poly(l, x); }

}  // namespace sst
