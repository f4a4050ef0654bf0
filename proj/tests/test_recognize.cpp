#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sst/recognize.hpp"

using namespace sst;

namespace {

// Exact rational Gram-Schmidt for the definition re-check.
struct RationalGS {
  std::vector<std::vector<Rat>> star;
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> norms;

  explicit RationalGS(const Lattice& lat) {
    const size_t n = lat.basis.size();
    const size_t w = lat.basis.front().size();
    star.assign(n, {});
    mu.assign(n, std::vector<Rat>(n, Rat(0)));
    norms.assign(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
      std::vector<Rat> v(w);
      for (size_t k = 0; k < w; ++k) v[k] = Rat(lat.basis[i][k]);
      for (size_t j = 0; j < i; ++j) {
        Rat dot(0);
        for (size_t k = 0; k < w; ++k) dot += Rat(lat.basis[i][k]) * star[j][k];
        mu[i][j] = dot / norms[j];
        for (size_t k = 0; k < w; ++k) v[k] -= mu[i][j] * star[j][k];
      }
      star[i] = v;
      for (size_t k = 0; k < w; ++k) norms[i] += v[k] * v[k];
    }
  }
};

Int brute_force_shortest_norm2(const Lattice& lat, long bound) {
  REQUIRE(lat.basis.size() == 2);
  Int best(0);
  for (long c1 = -bound; c1 <= bound; ++c1)
    for (long c2 = -bound; c2 <= bound; ++c2) {
      if (c1 == 0 && c2 == 0) continue;
      Int norm2(0);
      for (size_t k = 0; k < lat.basis[0].size(); ++k) {
        Int coord = c1 * lat.basis[0][k] + c2 * lat.basis[1][k];
        norm2 += coord * coord;
      }
      if (best == 0 || norm2 < best) best = norm2;
    }
  return best;
}

}  // namespace

TEST_CASE("lll leaves an identity basis alone and validates inputs") {
  Lattice id;
  for (int i = 0; i < 4; ++i) {
    std::vector<Int> row(4, Int(0));
    row[static_cast<size_t>(i)] = 1;
    id.basis.push_back(row);
  }
  Lattice red = lll(id);
  CHECK(red.basis == id.basis);

  Lattice dep;
  dep.basis = {{Int(1), Int(2)}, {Int(2), Int(4)}};
  CHECK_THROWS_AS(lll(dep), DependentBasisError);
  CHECK_THROWS_AS(lll(id, rat(1, 4)), std::invalid_argument);
  CHECK_THROWS_AS(lll(id, rat(1)), std::invalid_argument);
}

TEST_CASE("lll finds the scaled-column relation and matches brute force") {
  // {(1,0,12K),(0,1,20K)}: with the last column scaled up, the shortest
  // vector is the relation 5*(first) - 3*(second) = (5,-3,0).
  Int K("1000000");
  Lattice lat;
  lat.basis = {{Int(1), Int(0), 12 * K}, {Int(0), Int(1), 20 * K}};
  Lattice red = lll(lat);

  Int expected = brute_force_shortest_norm2(lat, 40);
  CHECK(expected == 34);  // (5,-3,0)
  Int got(0);
  for (const auto& row : red.basis) {
    Int norm2(0);
    for (const Int& v : row) norm2 += v * v;
    if (got == 0 || norm2 < got) got = norm2;
  }
  CHECK(got == expected);
}

TEST_CASE("lll output satisfies size reduction and the Lovasz condition") {
  std::mt19937_64 rng(77);
  Rat delta = rat(3, 4);
  for (int trial = 0; trial < 10; ++trial) {
    Lattice lat;
    const int n = 5;
    for (int i = 0; i < n; ++i) {
      std::vector<Int> row;
      for (int j = 0; j < n; ++j)
        row.push_back(Int(static_cast<long>(rng() % 2001) - 1000));
      lat.basis.push_back(row);
    }
    Lattice red;
    try {
      red = lll(lat, delta);
    } catch (const DependentBasisError&) {
      continue;
    }
    RationalGS gs(red);
    for (size_t i = 0; i < red.basis.size(); ++i)
      for (size_t j = 0; j < i; ++j) {
        Rat m = gs.mu[i][j];
        CHECK(abs(m) <= rat(1, 2));
      }
    for (size_t k = 1; k < red.basis.size(); ++k) {
      Rat lhs = gs.norms[k] + gs.mu[k][k - 1] * gs.mu[k][k - 1] * gs.norms[k - 1];
      CHECK(lhs >= delta * gs.norms[k - 1]);
    }
  }
}

TEST_CASE("integer relations: classics and a negative case") {
  long p = 256;
  BigReal phi = (BigReal::from(1, p) + sqrt(BigReal::from(5, p))) / 2;
  auto rel = integer_relation({BigReal::from(1, p), phi, phi * phi}, Int(100), p);
  REQUIRE(rel.status == RecogStatus::Found);
  CHECK(rel.coeffs == std::vector<Int>{Int(1), Int(1), Int(-1)});
  CHECK(rel.residual < BigReal::pow2(-p / 2, 64));  // soundness re-check

  auto rel2 = integer_relation({log(BigReal::from(2, p)), log(BigReal::from(4, p))},
                               Int(100), p);
  REQUIRE(rel2.status == RecogStatus::Found);
  CHECK(rel2.coeffs == std::vector<Int>{Int(2), Int(-1)});

  auto rel3 = integer_relation({BigReal::from(1, p), BigReal::pi(p)}, Int(1000), p);
  CHECK(rel3.status == RecogStatus::None);

  // resolving a height-2^100 relation needs far more than 128 bits
  auto rel4 = integer_relation({BigReal::from(1, 128), BigReal::pi(128)},
                               Int(1) << 100, 128);
  CHECK(rel4.status == RecogStatus::Inconclusive);

  CHECK_THROWS_AS(integer_relation({BigReal::from(1, p)}, Int(10), p),
                  std::invalid_argument);
  CHECK_THROWS_AS(integer_relation({phi, phi}, Int(10), 64), std::invalid_argument);
}

TEST_CASE("algdep recovers minimal polynomials") {
  long p = 320;
  AlgdepResult r1 = algdep(sqrt(BigReal::from(2, p)), 4, Int(1000), p);
  REQUIRE(r1.status == RecogStatus::Found);
  CHECK(r1.poly == std::vector<Int>{Int(-2), Int(0), Int(1)});

  BigReal phi = (BigReal::from(1, p) + sqrt(BigReal::from(5, p))) / 2;
  AlgdepResult r2 = algdep(phi, 6, Int(1000), p);
  REQUIRE(r2.status == RecogStatus::Found);
  CHECK(r2.poly == std::vector<Int>{Int(-1), Int(-1), Int(1)});

  AlgdepResult r3 = algdep(pow(BigReal::from(2, p), BigReal::from(1, p) / 3), 6, Int(1000), p);
  REQUIRE(r3.status == RecogStatus::Found);
  CHECK(r3.poly == std::vector<Int>{Int(-2), Int(0), Int(0), Int(1)});

  // the minimal polynomial is preferred over its square
  BigReal eighth = pow((BigReal::from(3, p) + sqrt(BigReal::from(5, p))) / 2,
                       BigReal::from(1, p) / 8);
  AlgdepResult r4 = algdep(eighth, 16, Int(1000), p);
  REQUIRE(r4.status == RecogStatus::Found);
  CHECK(r4.poly.size() == 9);  // x^8 - x^4 - 1
}

TEST_CASE("algdep residual invariant") {
  long p = 256;
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 6; ++trial) {
    long num = static_cast<long>(rng() % 50 + 2);
    BigReal x = sqrt(BigReal::from(num, p));
    AlgdepResult r = algdep(x, 4, Int(100000), p);
    REQUIRE(r.status == RecogStatus::Found);
    // |p(x)| < 2^(-0.9 prec) * height * (deg+1) * max(1,|x|)^deg
    BigReal bound = BigReal::pow2(-static_cast<long>(0.9 * p), 64) *
                    BigReal::from(r.height, 64) *
                    BigReal::from(static_cast<long>(r.poly.size()), 64) *
                    pow_si(std::max(abs(x.round_to(64)), BigReal::from(1, 64)),
                           static_cast<long>(r.poly.size() - 1));
    CHECK(r.residual < bound);
  }
}

TEST_CASE("rational reconstruction") {
  long p = 1024;
  CHECK(rational_reconstruct(BigReal::from(rat(1, 4), p), 1000) == rat(1, 4));

  // 300-digit decimal of 1/3
  std::string third = "0.";
  for (int i = 0; i < 300; ++i) third += "3";
  CHECK(rational_reconstruct(BigReal::from_str(third, p), 1000) == rat(1, 3));

  // Golden ratio: at max_den 800 the best convergent is 987/610 whose error
  // 1/(sqrt5 610^2) exceeds 1/(2*610*800), so nothing qualifies; at 1000
  // the convergent 1597/987 squeaks under its bound and is returned.
  BigReal phi = (BigReal::from(1, p) + sqrt(BigReal::from(5, p))) / 2;
  CHECK_FALSE(rational_reconstruct(phi, 800).has_value());
  CHECK(rational_reconstruct(phi, 1000) == rat(1597, 987));

  CHECK(rational_reconstruct(BigReal::from(rat(-22, 7), p), 100) == rat(-22, 7));
  CHECK(rational_reconstruct(BigReal::from(0, p), 100) == Rat(0));
}

TEST_CASE("exact rational of a binary float") {
  BigReal x = BigReal::from(rat(3, 8), 128);
  CHECK(exact_rational_of(x) == rat(3, 8));
  CHECK(exact_rational_of(BigReal::from(0, 64)) == 0);
}
