#include "sst/bernoulli.hpp"

namespace sst {

BernoulliCache::BernoulliCache(unsigned max_index) {
  table_.reserve(max_index + 1);
  table_.push_back(rat(1));
  if (max_index >= 1) table_.push_back(rat(-1, 2));
  // B_n = -1/(n+1) * sum_{k<n} C(n+1,k) B_k
  for (unsigned n = 2; n <= max_index; ++n) {
    if (n % 2 == 1) {
      table_.push_back(rat(0));
      continue;
    }
    Rat acc(0);
    for (unsigned k = 0; k < n; ++k) acc += Rat(binomial(n + 1, k)) * table_[k];
    acc /= Rat(Int(n) + 1);
    table_.push_back(-acc);
  }
}

const Rat& BernoulliCache::number(unsigned l) const {
  if (l >= table_.size())
    throw CapacityError("Bernoulli index " + std::to_string(l) + " above cache bound " +
                        std::to_string(table_.size() - 1));
  return table_[l];
}

Rat BernoulliCache::poly(unsigned l, const Rat& x) const {
  number(l);  // capacity check
  // Horner over C(l,k) B_k x^(l-k), k = 0..l.
  Rat acc(0);
  Rat xpow(1);
  for (int k = static_cast<int>(l); k >= 0; --k) {
    acc += Rat(binomial(l, k)) * table_[k] * xpow;
    xpow *= x;
  }
  return acc;
}

const BernoulliCache& bernoulli_cache() {
  static const BernoulliCache cache(64);
  return cache;
}

}  // namespace sst
