#include "sst/bigreal.hpp"

namespace sst {

std::string BigReal::to_string(size_t digits) const {
  if (is_nan()) return "nan";
  if (is_zero()) return "0";
  if (digits == 0) digits = decimal_digits_for(prec());
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  std::string body = neg ? mant.substr(1) : mant;
  // mpfr mantissa is 0.d1d2... * 10^e; render as d1.d2... e(e-1)
  std::string out = neg ? "-" : "";
  out += body.substr(0, 1);
  if (body.size() > 1) out += "." + body.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

}  // namespace sst
