#include "fibkit/seq.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace fibkit::seq {

const BigInt& SeqTable::at(Index n) const {
  if (!contains(n))
    throw std::out_of_range("index " + std::to_string(n) + " outside table [" +
                            std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
  return values_[static_cast<std::size_t>(n - lo_)];
}

std::pair<BigInt, BigInt> fib_pair_doubling(Index n) {
  if (n < 0)
    throw std::invalid_argument("fib_pair_doubling: negative index " + std::to_string(n));
  BigInt a = 0; // F_k
  BigInt b = 1; // F_{k+1}
  BigInt c, d;
  const auto un = static_cast<std::uint64_t>(n);
  for (int bit = static_cast<int>(std::bit_width(un)) - 1; bit >= 0; --bit) {
    // F_2k = F_k (2 F_{k+1} - F_k), F_2k+1 = F_k^2 + F_{k+1}^2
    c = b * 2 - a;
    c *= a;
    d = a * a + b * b;
    if ((un >> bit) & 1U) {
      a = d;
      b = c + d;
    } else {
      a = std::move(c);
      b = std::move(d);
    }
  }
  return {std::move(a), std::move(b)};
}

BigInt fib(Index n) {
  if (n >= 0)
    return fib_pair_doubling(n).first;
  BigInt v = fib_pair_doubling(-n).first;
  // F_{-n} = (-1)^{n+1} F_n
  if (!is_odd(n))
    v = -v;
  return v;
}

BigInt lucas(Index n) {
  const Index k = n >= 0 ? n : -n;
  auto [f, f1] = fib_pair_doubling(k);
  BigInt v = f1 * 2 - f;
  // L_{-n} = (-1)^n L_n
  if (n < 0 && is_odd(k))
    v = -v;
  return v;
}

BigInt gen(const Seed& seed, Index n) {
  // G_n = G_0 F_{n-1} + G_1 F_n holds for every integer n.
  BigInt fn, fnm1;
  if (n >= 1) {
    auto [a, b] = fib_pair_doubling(n - 1);
    fnm1 = std::move(a);
    fn = std::move(b);
  } else {
    fn = fib(n);
    fnm1 = fib(n - 1);
  }
  return seed.g0 * fnm1 + seed.g1 * fn;
}

BigInt gen_naive(const Seed& seed, Index n) {
  BigInt a = seed.g0; // G_i
  BigInt b = seed.g1; // G_{i+1}
  if (n >= 0) {
    for (Index i = 0; i < n; ++i) {
      a += b;
      std::swap(a, b);
    }
    return a;
  }
  for (Index i = 0; i > n; --i) {
    // (G_i, G_{i+1}) -> (G_{i-1}, G_i)
    b -= a;
    std::swap(a, b);
  }
  return a;
}

BigInt fib_naive(Index n) { return gen_naive(Seed::fibonacci(), n); }
BigInt lucas_naive(Index n) { return gen_naive(Seed::lucas(), n); }

SeqTable table(const Seed& seed, Index lo, Index hi) {
  if (lo > hi)
    throw std::invalid_argument("table: lo " + std::to_string(lo) + " > hi " + std::to_string(hi));
  std::vector<BigInt> values(static_cast<std::size_t>(hi - lo + 1));
  auto slot = [&](Index n) -> BigInt& { return values[static_cast<std::size_t>(n - lo)]; };

  // Anchor at the window point nearest the seed, then sweep both ways.
  const Index anchor = std::clamp<Index>(0, lo, hi);
  slot(anchor) = anchor == 0 ? seed.g0 : gen_naive(seed, anchor);
  BigInt above = anchor == 0 ? seed.g1 : gen_naive(seed, anchor + 1); // G_{anchor+1}
  if (anchor + 1 <= hi)
    slot(anchor + 1) = above;
  for (Index n = anchor + 2; n <= hi; ++n)
    slot(n) = slot(n - 1) + slot(n - 2);
  // Walking down: G_n = G_{n+2} - G_{n+1}, with `above` holding G_{n+2}.
  for (Index n = anchor - 1; n >= lo; --n) {
    slot(n) = above - slot(n + 1);
    above = slot(n + 1);
  }
  return SeqTable(seed, lo, std::move(values));
}

BigInt decompose_numerator(const Seed& seed, Index n) {
  const BigInt g_minus1 = seed.g1 - seed.g0;
  return (g_minus1 + seed.g1) * fib(n) + seed.g0 * lucas(n);
}

BigInt decompose(const Seed& seed, Index n) {
  BigInt twice = decompose_numerator(seed, n);
  if (mpz_odd_p(twice.get_mpz_t()))
    throw InternalFault("decompose: odd numerator " + to_decimal(twice) + " at n=" + std::to_string(n));
  BigInt half;
  mpz_divexact_ui(half.get_mpz_t(), twice.get_mpz_t(), 2);
  return half;
}

} // namespace fibkit::seq
