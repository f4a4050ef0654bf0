#include "sst/identities.hpp"

#include <cassert>

namespace sst {

namespace {

Rat zf(unsigned m, std::vector<Rat> a, std::vector<Rat> x) {
  return formal_zeta<Rat>(m, a, x, Rat(1));
}

std::vector<Rat> tail(const std::vector<Rat>& v) {
  return std::vector<Rat>(v.begin() + 1, v.end());
}

std::vector<Rat> with_first(std::vector<Rat> v, const Rat& value) {
  v[0] = value;
  return v;
}

}  // namespace

const char* identity_name(FmlIdentity id) {
  switch (id) {
    case FmlIdentity::Reflection: return "reflection";
    case FmlIdentity::BoundaryShift: return "boundary_shift";
    case FmlIdentity::Multiplication: return "multiplication";
    case FmlIdentity::ConeSplitUpper: return "cone_split_upper";
    case FmlIdentity::ConeSplitLower: return "cone_split_lower";
    case FmlIdentity::DiagonalSplit: return "diagonal_split";
    case FmlIdentity::ReflectionSum: return "reflection_sum";
    case FmlIdentity::ProductDifference: return "product_difference";
  }
  return "?";
}

bool check_identity(FmlIdentity id, unsigned m, const std::vector<Rat>& a,
                    const std::vector<Rat>& x, unsigned n) {
  const size_t r = a.size();
  if (a.size() != x.size()) throw std::invalid_argument("len(a) != len(x)");
  for (const Rat& ai : a)
    if (ai == 0) throw std::invalid_argument("zero entry in a");

  switch (id) {
    case FmlIdentity::Reflection: {
      if (r < 1) throw std::invalid_argument("needs r >= 1");
      std::vector<Rat> a2 = with_first(a, -a[0]);
      std::vector<Rat> x2 = with_first(x, Rat(1) - x[0]);
      return zf(m, a, x) == -zf(m, a2, x2);
    }
    case FmlIdentity::BoundaryShift: {
      if (r < 1) throw std::invalid_argument("needs r >= 1");
      Rat lhs = zf(m, a, with_first(x, Rat(0)));
      Rat rhs = zf(m, a, with_first(x, Rat(1))) + zf(m, tail(a), tail(x));
      return lhs == rhs;
    }
    case FmlIdentity::Multiplication: {
      if (r < 1) throw std::invalid_argument("needs r >= 1");
      if (n < 1) throw std::invalid_argument("needs n >= 1");
      std::vector<Rat> a2 = with_first(a, Rat(static_cast<long>(n)) * a[0]);
      Rat rhs(0);
      for (unsigned h = 0; h < n; ++h)
        rhs += zf(m, a2, with_first(x, (x[0] + Rat(static_cast<long>(h))) / Rat(static_cast<long>(n))));
      return zf(m, a, x) == rhs;
    }
    case FmlIdentity::ConeSplitUpper:
    case FmlIdentity::ConeSplitLower: {
      if (r < 2) throw std::invalid_argument("needs r >= 2");
      if (a[0] + a[1] == 0) throw ResampleNeeded("a_1 + a_2 = 0");
      std::vector<Rat> a_sharp = a, a_flat = a;
      a_sharp[1] = a[0] + a[1];
      a_flat[0] = a[0] + a[1];
      std::vector<Rat> x_sharp = x, x_flat = x;
      if (id == FmlIdentity::ConeSplitUpper) {
        x_sharp[0] = x[0] - x[1] + 1;
        x_flat[1] = x[1] - x[0];
      } else {
        x_sharp[0] = x[0] - x[1];
        x_flat[1] = x[1] - x[0] + 1;
      }
      return zf(m, a, x) == zf(m, a_sharp, x_sharp) + zf(m, a_flat, x_flat);
    }
    case FmlIdentity::DiagonalSplit: {
      if (r < 2) throw std::invalid_argument("needs r >= 2");
      if (a[0] + a[1] == 0) throw ResampleNeeded("a_1 + a_2 = 0");
      std::vector<Rat> xd = x;
      xd[1] = xd[0];  // the identity is stated on the diagonal x_1 = x_2
      std::vector<Rat> a_sharp = a, a_flat = a;
      a_sharp[1] = a[0] + a[1];
      a_flat[0] = a[0] + a[1];
      std::vector<Rat> x_sharp = xd, x_flat = xd;
      x_sharp[0] = Rat(1);
      x_flat[1] = Rat(1);
      std::vector<Rat> a_nat, x_nat;
      a_nat.push_back(a[0] + a[1]);
      x_nat.push_back(xd[0]);
      for (size_t i = 2; i < r; ++i) {
        a_nat.push_back(a[i]);
        x_nat.push_back(xd[i]);
      }
      return zf(m, a, xd) ==
             zf(m, a_sharp, x_sharp) + zf(m, a_flat, x_flat) + zf(m, a_nat, x_nat);
    }
    case FmlIdentity::ReflectionSum: {
      if (r < 1) throw std::invalid_argument("needs r >= 1");
      std::vector<Rat> x1 = with_first(x, Rat(1));
      Rat sum = zf(m, a, x1) + zf(m, with_first(a, -a[0]), x1) + zf(m, tail(a), tail(x1));
      return sum == 0;
    }
    case FmlIdentity::ProductDifference:
      throw std::invalid_argument("use check_product_difference");
  }
  return false;
}

bool check_product_difference(const std::vector<Rat>& a, const std::vector<Rat>& a2,
                              const std::vector<Rat>& b, const std::vector<Rat>& b2) {
  const size_t t = a.size();
  if (a2.size() != t || b.size() != t || b2.size() != t)
    throw std::invalid_argument("vector lengths differ");
  for (size_t i = 0; i < t; ++i)
    if (a[i] == 0 || a2[i] == 0) throw std::invalid_argument("zero entry in a or a'");

  Rat lhs1(1), lhs2(1);
  for (size_t i = 0; i < t; ++i) {
    lhs1 *= a[i] * b[i];
    lhs2 *= a2[i] * b2[i];
  }
  Rat rhs(0);
  for (size_t i = 0; i < t; ++i) {
    Rat num(1);
    for (size_t j = 0; j < t; ++j) num *= a[i] * b[j] - a2[i] * b2[j];
    Rat den(1);
    for (size_t j = 0; j < t; ++j) {
      if (j == i) continue;
      Rat d = a[i] / a[j] - a2[i] / a2[j];
      if (d == 0) throw ResampleNeeded("vanishing denominator a_i/a_j - a_i'/a_j'");
      den *= d;
    }
    rhs += num / den;
  }
  return lhs1 - lhs2 == rhs;
}

Rat random_rat(std::mt19937_64& rng, long bound, bool nonzero) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  for (;;) {
    Rat r = rat(num(rng), den(rng));
    if (!nonzero || r != 0) return r;
  }
}

IdentitySuiteResult run_identity_suite(FmlIdentity id, unsigned trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IdentitySuiteResult result{identity_name(id), trials, 0, seed};

  for (unsigned trial = 0; trial < trials; ++trial) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 64) throw std::runtime_error("resampling did not terminate");
      try {
        bool ok = false;
        if (id == FmlIdentity::ProductDifference) {
          std::uniform_int_distribution<size_t> tdist(1, 3);
          size_t t = tdist(rng);
          std::vector<Rat> a, a2, b, b2;
          for (size_t i = 0; i < t; ++i) {
            a.push_back(random_rat(rng, 100, true));
            a2.push_back(random_rat(rng, 100, true));
            b.push_back(random_rat(rng, 100));
            b2.push_back(random_rat(rng, 100));
          }
          ok = check_product_difference(a, a2, b, b2);
        } else {
          const bool needs_two = id == FmlIdentity::ConeSplitUpper ||
                                 id == FmlIdentity::ConeSplitLower ||
                                 id == FmlIdentity::DiagonalSplit;
          std::uniform_int_distribution<size_t> rdist(needs_two ? 2 : 1, 4);
          std::uniform_int_distribution<unsigned> mdist(1, 4);
          std::uniform_int_distribution<unsigned> ndist(1, 4);
          size_t r = rdist(rng);
          unsigned m = mdist(rng);
          std::vector<Rat> a, x;
          for (size_t i = 0; i < r; ++i) {
            a.push_back(random_rat(rng, 100, true));
            x.push_back(random_rat(rng, 100));
          }
          ok = check_identity(id, m, a, x, ndist(rng));
        }
        if (!ok) ++result.failures;
        break;
      } catch (const ResampleNeeded&) {
        continue;
      }
    }
  }
  return result;
}

}  // namespace sst
