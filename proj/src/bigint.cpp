#include "fibkit/bigint.hpp"

#include <limits>

namespace fibkit {

BigInt parse_decimal(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size())
    throw std::invalid_argument("empty integer literal");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("not a decimal integer: '" + s + "'");
  if (s[0] == '+')
    s.erase(0, 1);
  return BigInt(s, 10);
}

Index to_index(const BigInt& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t()))
    throw std::out_of_range("integer " + to_decimal(v) + " does not fit an index");
  return static_cast<Index>(mpz_get_si(v.get_mpz_t()));
}

} // namespace fibkit
