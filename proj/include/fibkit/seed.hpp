#pragma once

#include "fibkit/bigint.hpp"

namespace fibkit::seq {

/// Initial values G_0, G_1 of the recurrence G_{n+2} = G_{n+1} + G_n.
struct Seed {
  BigInt g0;
  BigInt g1;

  static Seed fibonacci() { return {0, 1}; }
  static Seed lucas() { return {2, 1}; }

  friend bool operator==(const Seed& a, const Seed& b) { return a.g0 == b.g0 && a.g1 == b.g1; }
};

} // namespace fibkit::seq
