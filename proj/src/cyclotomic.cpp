#include "sst/cyclotomic.hpp"

#include <numeric>

namespace sst {

namespace {

// Quotient of exact polynomial division (divisor monic), coefficients low-first.
std::vector<Int> poly_div_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
  std::vector<Int> rem = num;
  std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
  for (size_t k = quot.size(); k-- > 0;) {
    Int c = rem[k + den.size() - 1];
    quot[k] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

std::vector<Int> cyclotomic_poly(unsigned long n) {
  // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
  std::vector<Int> acc(n + 1, Int(0));
  acc[0] = -1;
  acc[n] = 1;
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    acc = poly_div_exact(acc, cyclotomic_poly(d));
  }
  return acc;
}

bool CycSum::is_zero() const {
  if (terms_.empty()) return true;
  // Common root order.
  Int order(1);
  for (const auto& [e, c] : terms_) {
    (void)c;
    order = lcm(order, e.get_den());
  }
  unsigned long n = order.get_ui();
  // Polynomial in zeta_n, low-first.
  std::vector<Rat> poly(n, Rat(0));
  for (const auto& [e, c] : terms_) {
    Rat idx = e * Rat(Int(n));
    poly[idx.get_num().get_ui()] += c;
  }
  // Reduce modulo Phi_n.
  std::vector<Int> phi = cyclotomic_poly(n);
  size_t deg = phi.size() - 1;
  for (size_t k = poly.size(); k-- > deg;) {
    Rat c = poly[k];
    if (c == 0) continue;
    for (size_t j = 0; j < phi.size(); ++j) poly[k - deg + j] -= c * Rat(phi[j]);
  }
  for (size_t k = 0; k < deg && k < poly.size(); ++k)
    if (poly[k] != 0) return false;
  return true;
}

}  // namespace sst
