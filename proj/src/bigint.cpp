#include "walklis/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace walklis {

mpq_class rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("rational_from_double: not finite");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

std::string decimal_string(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();

  bool negative = false;
  if (num < 0) {
    negative = true;
    num = -num;
  }

  // strip factors of 2 and 5 from the denominator
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 5);
    ++fives;
  }
  if (den != 1) throw std::invalid_argument("decimal_string: expansion is not finite");

  const unsigned long shift = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, shift - twos);
  num *= scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 5, shift - fives);
  num *= scale;

  std::string digits = num.get_str();
  std::string out;
  if (shift == 0) {
    out = digits;
  } else {
    if (digits.size() <= shift) digits.insert(0, shift + 1 - digits.size(), '0');
    out = digits.substr(0, digits.size() - shift) + "." + digits.substr(digits.size() - shift);
    // trim trailing zeros of the fraction
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return negative ? "-" + out : out;
}

}  // namespace walklis
