#pragma once

#include <utility>
#include <vector>

#include "fibkit/bigint.hpp"
#include "fibkit/seed.hpp"

// Exact Fibonacci, Lucas and seeded generalized Fibonacci numbers at any
// integer index. Two independent paths are provided: fast doubling (the
// default) and naive step-by-step recurrence (kept as the reference).
namespace fibkit::seq {

/// Dense run of G_lo .. G_hi.
class SeqTable {
public:
  SeqTable(Seed seed, Index lo, std::vector<BigInt> values)
      : seed_(std::move(seed)), lo_(lo), values_(std::move(values)) {}

  const Seed& seed() const { return seed_; }
  Index lo() const { return lo_; }
  Index hi() const { return lo_ + static_cast<Index>(values_.size()) - 1; }
  bool contains(Index n) const { return n >= lo() && n <= hi(); }

  /// G_n; throws std::out_of_range outside [lo, hi].
  const BigInt& at(Index n) const;
  const std::vector<BigInt>& values() const { return values_; }

private:
  Seed seed_;
  Index lo_;
  std::vector<BigInt> values_;
};

/// (F_n, F_{n+1}) by fast doubling. Throws std::invalid_argument for n < 0.
std::pair<BigInt, BigInt> fib_pair_doubling(Index n);

BigInt fib(Index n);
BigInt lucas(Index n);
BigInt gen(const Seed& seed, Index n);

// Reference path: plain iteration of the recurrence, O(|n|) additions.
BigInt fib_naive(Index n);
BigInt lucas_naive(Index n);
BigInt gen_naive(const Seed& seed, Index n);

/// Builds G_lo .. G_hi by running the recurrence forwards and backwards from
/// the seed. Throws std::invalid_argument when lo > hi.
SeqTable table(const Seed& seed, Index lo, Index hi);

/// Evaluates G_n = ((G_{-1} + G_1) F_n + G_0 L_n) / 2. Throws InternalFault
/// if the bracket is odd, which cannot happen for integer seeds.
BigInt decompose(const Seed& seed, Index n);

/// The bracket (G_{-1} + G_1) F_n + G_0 L_n before halving.
BigInt decompose_numerator(const Seed& seed, Index n);

} // namespace fibkit::seq
