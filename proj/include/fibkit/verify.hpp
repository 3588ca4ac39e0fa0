#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fibkit/dsl.hpp"
#include "fibkit/params.hpp"
#include "fibkit/seq.hpp"

namespace fibkit::verify {

/// Raised when an expression cannot be evaluated at a point (negative
/// exponent, non-index-sized argument, unassigned symbol).
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the symbolic prover on structure it cannot expand, such as a
/// sequence argument that is not affine once the rank is fixed.
class SymbolicError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Grid, Recurrence, Symbolic, Expansion };

std::string_view mode_name(Mode m);

struct Failure {
  Assignment point;
  std::optional<seq::Seed> seed;
  BigInt lhs;
  BigInt rhs;
  std::string residual; // symbolic mode only
};

struct VerifyReport {
  std::string identity;
  std::string paper_tag;
  Mode mode = Mode::Grid;
  std::string detail; // e.g. "lhs, F-weighted" for recurrence runs
  std::vector<std::pair<std::string, Range>> ranges;
  Assignment fixed; // rank values fixed by a symbolic run
  std::vector<seq::Seed> seeds;
  std::size_t total = 0;
  std::vector<Failure> failures;
  double elapsed_ms = 0.0;

  bool passed() const { return failures.empty(); }
};

/// Exact value of one side of an identity at a point.
BigInt eval_side(const dsl::NodePtr& ast, const ParamPoint& pt);

/// Checks lhs == rhs at every point of the grid for every seed. The serial
/// path is the reference; the parallel path fans points out over `workers`
/// OpenMP threads (0 picks the runtime default) and merges deterministically.
VerifyReport verify_grid_serial(const dsl::Identity& id, const GridSpec& grid);
VerifyReport verify_grid(const dsl::Identity& id, const GridSpec& grid, int workers = 0);

/// Per-point predicate: a Failure when the point fails, nothing when it holds.
using PointCheck = std::function<std::optional<Failure>(const ParamPoint&)>;

/// Runs an arbitrary check over the identity's grid (every point x seed)
/// with the same enumeration, parallel fan-out and merge as verify_grid.
VerifyReport run_grid_check(const dsl::Identity& id, const GridSpec& grid, Mode mode, std::string detail,
                            const PointCheck& check, int workers = 0);

enum class Weights { Fibonacci, Lucas };

/// Checks S(n,m,p,q) = W(m+q) S(n-1,m,p,q) - W(m) S(n-1,m,p+q,q) with W = F or
/// L, where S is the chosen side of an identity over parameters n, m, p, q.
/// The rank range must start at n >= 1.
VerifyReport check_recurrence(const dsl::Identity& id, dsl::Side side, Weights weights, const GridSpec& grid,
                              int workers = 0);

/// Checks an expanded entry against its parent at the relabeled point, side by
/// side, over every grid point and seed.
VerifyReport check_expansion(const dsl::Identity& child, const dsl::Identity& parent, const GridSpec& grid,
                             int workers = 0);

/// Proves lhs - rhs == 0 for all integer values of the remaining parameters
/// (at most three) and all seeds, with every rank parameter fixed to `rank`.
/// One case per parity assignment of the remaining parameters.
VerifyReport prove_symbolic(const dsl::Identity& id, std::optional<Index> rank = std::nullopt);

/// F_{p-nm+1} - (-1)^n F_{p-nm-1}, which is F_{p-nm} for even n and L_{p-nm}
/// for odd n. Throws InternalFault if that split does not hold.
BigInt case_split_value(Index p, Index n, Index m);

} // namespace fibkit::verify
