#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fibkit {

/// Unbounded signed integer. Every numeric value in the toolkit is one of these.
using BigInt = mpz_class;

/// Sequence index. Indices are small enough for a machine word; values are not.
using Index = std::int64_t;

/// Raised when an invariant that must hold by construction is violated at
/// runtime (an odd pre-halving quantity, a Binet result with a phi residue).
class InternalFault : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline BigInt big(Index v) {
  BigInt r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

/// Parses an optionally signed decimal literal; throws std::invalid_argument.
BigInt parse_decimal(std::string_view text);

/// Narrows to Index, throwing std::out_of_range when the value does not fit.
Index to_index(const BigInt& v);

inline bool is_odd(Index v) { return (v & 1) != 0; }

/// (-1)^e for any integer e.
inline int sign_pow(Index e) { return is_odd(e) ? -1 : 1; }

} // namespace fibkit
