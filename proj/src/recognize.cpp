#include "sst/recognize.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace sst {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Fraction-free LLL state: lambda[i][j] = d_j * mu_ij, d[i] the Gram
// determinants, all integral.
struct LllState {
  std::vector<std::vector<Int>> b;
  std::vector<std::vector<Int>> lambda;
  std::vector<Int> d;  // d[0] = 1, shifted by one against the 1-based texts

  explicit LllState(const Lattice& lattice) : b(lattice.basis) {
    const size_t n = b.size();
    lambda.assign(n, std::vector<Int>(n, Int(0)));
    d.assign(n + 1, Int(1));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j <= i; ++j) {
        Int u = dot(b[i], b[j]);
        for (size_t k = 0; k < j; ++k) u = (d[k + 1] * u - lambda[i][k] * lambda[j][k]) / d[k];
        if (j < i)
          lambda[i][j] = u;
        else {
          if (u <= 0) throw DependentBasisError("basis is linearly dependent");
          d[i + 1] = u;
        }
      }
    }
  }

  size_t size() const { return b.size(); }

  void reduce(size_t k, size_t l) {
    // |2 lambda[k][l]| <= d[l+1] afterwards
    Int two_lambda = 2 * lambda[k][l];
    if (abs(two_lambda) <= d[l + 1]) return;
    Int q;
    // round(lambda / d): floor((2 lambda + d) / (2 d))
    mpz_fdiv_q(q.get_mpz_t(), Int(two_lambda + d[l + 1]).get_mpz_t(),
               Int(2 * d[l + 1]).get_mpz_t());
    for (size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
    for (size_t j = 0; j < l; ++j) lambda[k][j] -= q * lambda[l][j];
    lambda[k][l] -= q * d[l + 1];
  }

  void swap_rows(size_t k) {
    std::swap(b[k], b[k - 1]);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lambda[k][j], lambda[k - 1][j]);
    Int lam = lambda[k][k - 1];
    Int bnew = (d[k - 1] * d[k + 1] + lam * lam) / d[k];
    for (size_t i = k + 1; i < size(); ++i) {
      Int t = lambda[i][k];
      lambda[i][k] = (d[k + 1] * lambda[i][k - 1] - lam * t) / d[k];
      lambda[i][k - 1] = (bnew * t + lam * lambda[i][k]) / d[k + 1];
    }
    d[k] = bnew;
  }
};

}  // namespace

Lattice lll(const Lattice& lattice, const Rat& delta) {
  if (delta <= rat(1, 4) || delta >= 1) throw std::invalid_argument("delta must be in (1/4, 1)");
  if (lattice.basis.empty()) return lattice;
  const size_t width = lattice.basis.front().size();
  for (const auto& row : lattice.basis)
    if (row.size() != width) throw std::invalid_argument("ragged lattice basis");

  LllState st(lattice);
  const Int dn = delta.get_num(), dd = delta.get_den();
  size_t k = 1;
  while (k < st.size()) {
    st.reduce(k, k - 1);
    // Lovasz: d[k+1] d[k-1] >= delta d[k]^2 - lambda^2
    Int lam = st.lambda[k][k - 1];
    bool ok = dd * (st.d[k + 1] * st.d[k - 1] + lam * lam) >= dn * st.d[k] * st.d[k];
    if (ok) {
      for (size_t l = k - 1; l-- > 0;) st.reduce(k, l);
      ++k;
    } else {
      st.swap_rows(k);
      k = k > 1 ? k - 1 : 1;
    }
  }
  Lattice out;
  out.basis = std::move(st.b);
  return out;
}

Rat exact_rational_of(const BigReal& x) {
  if (x.is_zero()) return Rat(0);
  Int mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.raw());
  Rat r(mant);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}

RelationResult integer_relation(const std::vector<BigReal>& xs, const Int& max_coeff, long prec) {
  const size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("need at least two values");
  if (prec < 128) throw std::invalid_argument("prec must be >= 128");

  RelationResult out;
  const long scale_bits = prec - 16;
  const double needed = 2.0 * (static_cast<double>(n) *
                                   std::log2(std::max(2.0, mpz_class(max_coeff).get_d())) +
                               32.0);

  Lattice lat;
  long wp = prec + 64;
  BigReal scale = BigReal::pow2(scale_bits, wp);
  for (size_t i = 0; i < n; ++i) {
    std::vector<Int> row(n + 1, Int(0));
    row[i] = 1;
    row[n] = (xs[i].round_to(wp) * scale).round_to_int();
    lat.basis.push_back(std::move(row));
  }
  Lattice red = lll(lat);

  // Among all reduced rows passing the residual and height bounds, keep the
  // shortest: LLL's slack factor can put a multiple of the minimal relation
  // (e.g. the square of a minimal polynomial) ahead of the relation itself.
  BigReal bound = BigReal::pow2(-prec / 2, wp);
  Int best_norm2(0);
  for (const auto& row : red.basis) {
    Int height(0);
    Int norm2(0);
    for (size_t i = 0; i < n; ++i) {
      height = std::max(height, Int(abs(row[i])));
      norm2 += row[i] * row[i];
    }
    if (height == 0 || height > max_coeff) continue;
    BigReal combo(wp);
    for (size_t i = 0; i < n; ++i) combo += BigReal::from(row[i], wp) * xs[i].round_to(wp);
    if (!(abs(combo) < bound)) continue;
    if (out.status == RecogStatus::Found && norm2 >= best_norm2) continue;
    out.coeffs.assign(row.begin(), row.begin() + static_cast<long>(n));
    for (const Int& c : out.coeffs)
      if (c != 0) {
        if (c < 0)
          for (Int& v : out.coeffs) v = -v;
        break;
      }
    out.residual = abs(combo);
    out.status = RecogStatus::Found;
    best_norm2 = norm2;
  }
  if (out.status == RecogStatus::Found) return out;
  out.status = static_cast<double>(prec) < needed ? RecogStatus::Inconclusive : RecogStatus::None;
  return out;
}

AlgdepResult algdep(const BigReal& x, unsigned max_deg, const Int& max_height, long prec) {
  AlgdepResult out;
  long wp = prec + 64;
  std::vector<BigReal> powers;
  BigReal p = BigReal::from(1, wp);
  for (unsigned i = 0; i <= max_deg; ++i) {
    powers.push_back(p);
    p = p * x.round_to(wp);
  }
  // Lowest degree first, so the minimal polynomial wins over its multiples.
  RelationResult rel;
  bool saw_inconclusive = false;
  for (unsigned deg = 1; deg <= max_deg; ++deg) {
    std::vector<BigReal> prefix(powers.begin(), powers.begin() + deg + 1);
    rel = integer_relation(prefix, max_height, prec);
    if (rel.status == RecogStatus::Found) break;
    if (rel.status == RecogStatus::Inconclusive) saw_inconclusive = true;
  }
  out.status = rel.status == RecogStatus::Found
                   ? RecogStatus::Found
                   : (saw_inconclusive ? RecogStatus::Inconclusive : RecogStatus::None);
  if (out.status != RecogStatus::Found) return out;

  std::vector<Int> poly = rel.coeffs;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  assert(!poly.empty());
  Int content(0);
  for (const Int& c : poly) content = gcd(content, c);
  for (Int& c : poly) c /= content;
  if (poly.back() < 0)
    for (Int& c : poly) c = -c;

  // re-verification at doubled precision
  long wp2 = 2 * prec;
  BigReal acc(wp2);
  BigReal xp = BigReal::from(1, wp2);
  Int height(0);
  for (size_t i = 0; i < poly.size(); ++i) {
    acc += BigReal::from(poly[i], wp2) * xp;
    xp = xp * x.round_to(wp2);
    height = std::max(height, Int(abs(poly[i])));
  }
  out.poly = std::move(poly);
  out.residual = abs(acc);
  out.height = height;
  return out;
}

std::optional<Rat> rational_reconstruct(const BigReal& x, long max_den) {
  Rat target = exact_rational_of(x);
  // Continued-fraction convergents of the exact binary value.
  Int p0(1), q0(0);  // p_{-1}/q_{-1}
  Int p1, q1(1);     // p_0/q_0 = floor(x)/1
  Rat rest = target;
  p1 = rat_floor(rest);
  rest -= Rat(p1);
  while (true) {
    if (q1 > max_den) break;
    Rat err = target - rat(p1, q1);
    if (err < 0) err = -err;
    Rat bound = rat(Int(1), Int(2) * q1 * Int(max_den));
    if (err < bound) return rat(p1, q1);
    if (rest == 0) break;
    rest = Rat(1) / rest;
    Int a = rat_floor(rest);
    rest -= Rat(a);
    Int p2 = a * p1 + p0;
    Int q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

}  // namespace sst
