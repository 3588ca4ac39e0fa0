#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fibkit/dsl.hpp"
#include "fibkit/seed.hpp"

// Parameter points and grids shared by the verifier and the oracle.
namespace fibkit::verify {

using Assignment = std::vector<std::pair<std::string, Index>>;

/// Concrete values for an identity's free parameters plus the seed used for G.
struct ParamPoint {
  Assignment values;
  seq::Seed seed = seq::Seed::fibonacci();

  /// Throws std::out_of_range for a parameter that is not assigned.
  Index get(std::string_view name) const;
  ParamPoint with(std::string_view name, Index value) const;
};

struct Range {
  Index lo = 0;
  Index hi = 0;
  Index size() const { return hi - lo + 1; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Parameter ranges for grid runs. Rank parameters (those bounding a sum) use
/// `rank`, every other parameter uses `index` unless named in `overrides`.
struct GridSpec {
  Range rank{0, 4};
  Range index{-8, 8};
  std::vector<std::pair<std::string, Range>> overrides;
  std::vector<seq::Seed> seeds;

  /// n in [0, 4], other parameters in [-8, 8], seeds (0,1) (2,1) (3,7) (-4,5).
  static GridSpec standard();
  static std::vector<seq::Seed> standard_seeds();

  Range range_for(const dsl::Identity& id, const std::string& param) const;
  /// Throws std::invalid_argument for empty ranges, a negative rank range or
  /// an empty seed list.
  void validate(const dsl::Identity& id) const;
};

} // namespace fibkit::verify
