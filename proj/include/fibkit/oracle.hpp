#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fibkit/dsl.hpp"
#include "fibkit/params.hpp"

// Brute-force reference evaluator. It depends on the AST and parameter types
// only: sequence values come from its own recurrence tables and binomials
// from Pascal's rule, so a bug in the fast paths cannot hide here.
namespace fibkit::oracle {

class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct IndexWindow {
  Index lo = 0;
  Index hi = 0;
  friend bool operator==(const IndexWindow&, const IndexWindow&) = default;
};

/// Tight bounds on every F/L/G argument of `ast` when each symbol ranges over
/// its interval, by interval arithmetic. Sum variables take the hull of their
/// bounds. Empty when the expression has no sequence references.
std::optional<IndexWindow> index_range(const dsl::NodePtr& ast,
                                       const std::vector<std::pair<std::string, verify::Range>>& ranges);
/// Window covering both sides of an identity over a grid.
std::optional<IndexWindow> index_range(const dsl::Identity& id, const verify::GridSpec& grid);

struct OracleConfig {
  IndexWindow window;
  std::vector<seq::Seed> seeds;
};

class Oracle {
public:
  explicit Oracle(const OracleConfig& config);

  /// Same contract as verify::eval_side. Throws OracleError for an index
  /// outside the window or a seed the oracle was not built with.
  BigInt eval(const dsl::NodePtr& ast, const verify::ParamPoint& pt) const;

  const IndexWindow& window() const { return window_; }

  /// Tabulated value; throws OracleError outside the window.
  const BigInt& fib(Index n) const { return lookup(fib_, n); }
  const BigInt& lucas(Index n) const { return lookup(lucas_, n); }
  const BigInt& gen(const seq::Seed& seed, Index n) const;

private:
  const BigInt& lookup(const std::vector<BigInt>& t, Index n) const;

  IndexWindow window_;
  std::vector<BigInt> fib_;
  std::vector<BigInt> lucas_;
  std::vector<std::pair<seq::Seed, std::vector<BigInt>>> gens_;
};

/// Evaluates with tables sized for exactly this point.
BigInt oracle_eval(const dsl::NodePtr& ast, const verify::ParamPoint& pt);

/// C(n, k) from Pascal's triangle; 0 outside 0 <= k <= n.
BigInt pascal_binomial(Index n, Index k);

} // namespace fibkit::oracle
