#include "fibkit/oracle.hpp"

#include <algorithm>
#include <mutex>

namespace fibkit::oracle {

using dsl::NodeKind;
using dsl::NodePtr;

namespace {

std::vector<BigInt> recurrence_table(const BigInt& g0, const BigInt& g1, const IndexWindow& w) {
  // Walk out from indices 0 and 1 to cover both ends of the window.
  const Index lo = std::min<Index>(w.lo, 0);
  const Index hi = std::max<Index>(w.hi, 1);
  std::vector<BigInt> all(static_cast<std::size_t>(hi - lo + 1));
  const auto zero = static_cast<std::size_t>(-lo);
  all[zero] = g0;
  all[zero + 1] = g1;
  for (std::size_t i = zero + 2; i < all.size(); ++i)
    all[i] = all[i - 1] + all[i - 2];
  for (std::size_t i = zero; i-- > 0;)
    all[i] = all[i + 2] - all[i + 1];
  return {all.begin() + (w.lo - lo), all.begin() + (w.hi - lo) + 1};
}

struct Interval {
  Index lo;
  Index hi;
};

Interval hull(std::initializer_list<Index> v) { return {std::min(v), std::max(v)}; }

class RangeWalker {
public:
  explicit RangeWalker(std::vector<std::pair<std::string, verify::Range>> ranges) : env_(std::move(ranges)) {}

  std::optional<IndexWindow> window;

  void visit(const NodePtr& n) {
    switch (n->kind) {
    case NodeKind::Fib:
    case NodeKind::Lucas:
    case NodeKind::Gen: {
      const Interval i = interval(n->args[0]);
      if (!window)
        window = IndexWindow{i.lo, i.hi};
      else
        window = IndexWindow{std::min(window->lo, i.lo), std::max(window->hi, i.hi)};
      visit(n->args[0]);
      return;
    }
    case NodeKind::Sum: {
      const Interval lo = interval(n->args[0]);
      const Interval hi = interval(n->args[1]);
      visit(n->args[0]);
      visit(n->args[1]);
      env_.emplace_back(n->name, verify::Range{lo.lo, hi.hi});
      visit(n->args[2]);
      env_.pop_back();
      return;
    }
    default:
      for (const auto& a : n->args)
        visit(a);
    }
  }

private:
  Interval interval(const NodePtr& n) const {
    const auto& a = n->args;
    switch (n->kind) {
    case NodeKind::Literal: {
      const Index v = to_index(n->literal);
      return {v, v};
    }
    case NodeKind::Symbol:
      for (auto it = env_.rbegin(); it != env_.rend(); ++it)
        if (it->first == n->name)
          return {it->second.lo, it->second.hi};
      throw OracleError("no range for symbol '" + n->name + "'");
    case NodeKind::Neg: {
      const Interval x = interval(a[0]);
      return {-x.hi, -x.lo};
    }
    case NodeKind::Add: {
      const Interval x = interval(a[0]), y = interval(a[1]);
      return {x.lo + y.lo, x.hi + y.hi};
    }
    case NodeKind::Sub: {
      const Interval x = interval(a[0]), y = interval(a[1]);
      return {x.lo - y.hi, x.hi - y.lo};
    }
    case NodeKind::Mul: {
      const Interval x = interval(a[0]), y = interval(a[1]);
      return hull({x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi});
    }
    case NodeKind::Sign:
      return {-1, 1};
    default:
      throw OracleError("index expression is not affine: " + dsl::print(n));
    }
  }

  std::vector<std::pair<std::string, verify::Range>> env_;
};

class Walker {
public:
  Walker(const Oracle& o, const verify::ParamPoint& pt) : o_(o), pt_(pt) {}

  BigInt eval(const NodePtr& n) {
    const auto& a = n->args;
    switch (n->kind) {
    case NodeKind::Literal:
      return n->literal;
    case NodeKind::Symbol: {
      BigInt v;
      mpz_set_si(v.get_mpz_t(), static_cast<long>(lookup(n->name)));
      return v;
    }
    case NodeKind::Neg:
      return -eval(a[0]);
    case NodeKind::Add:
      return eval(a[0]) + eval(a[1]);
    case NodeKind::Sub:
      return eval(a[0]) - eval(a[1]);
    case NodeKind::Mul:
      return eval(a[0]) * eval(a[1]);
    case NodeKind::Pow: {
      const BigInt base = eval(a[0]);
      const Index e = small(a[1]);
      if (e < 0)
        throw OracleError("negative exponent in " + dsl::print(n));
      BigInt r = 1;
      for (Index i = 0; i < e; ++i)
        r *= base;
      return r;
    }
    case NodeKind::Fib:
      return o_.fib(small(a[0]));
    case NodeKind::Lucas:
      return o_.lucas(small(a[0]));
    case NodeKind::Gen:
      return o_.gen(pt_.seed, small(a[0]));
    case NodeKind::Binom:
      return pascal_binomial(small(a[0]), small(a[1]));
    case NodeKind::Sign: {
      const Index e = small(a[0]);
      return (e % 2 == 0) ? 1 : -1;
    }
    case NodeKind::Pow5Floor: {
      const Index e = small(a[0]);
      if (e < 0)
        throw OracleError("pow5floor of negative argument");
      BigInt r = 1;
      for (Index i = 0; i < e / 2; ++i)
        r *= 5;
      return r;
    }
    case NodeKind::Sum: {
      const Index lo = small(a[0]);
      const Index hi = small(a[1]);
      BigInt total = 0;
      bound_.emplace_back(n->name, 0);
      for (Index k = lo; k <= hi; ++k) {
        bound_.back().second = k;
        total += eval(a[2]);
      }
      bound_.pop_back();
      return total;
    }
    }
    throw OracleError("unknown node");
  }

private:
  Index small(const NodePtr& n) {
    const BigInt v = eval(n);
    if (!mpz_fits_slong_p(v.get_mpz_t()))
      throw OracleError("index too large in " + dsl::print(n));
    return static_cast<Index>(mpz_get_si(v.get_mpz_t()));
  }

  Index lookup(const std::string& name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == name)
        return it->second;
    for (const auto& [k, v] : pt_.values)
      if (k == name)
        return v;
    throw OracleError("symbol '" + name + "' has no value");
  }

  const Oracle& o_;
  const verify::ParamPoint& pt_;
  std::vector<std::pair<std::string, Index>> bound_;
};

} // namespace

std::optional<IndexWindow> index_range(const NodePtr& ast,
                                       const std::vector<std::pair<std::string, verify::Range>>& ranges) {
  RangeWalker w(ranges);
  w.visit(ast);
  return w.window;
}

std::optional<IndexWindow> index_range(const dsl::Identity& id, const verify::GridSpec& grid) {
  std::vector<std::pair<std::string, verify::Range>> ranges;
  for (const auto& p : id.params)
    ranges.emplace_back(p, grid.range_for(id, p));
  auto l = index_range(id.lhs, ranges);
  auto r = index_range(id.rhs, ranges);
  if (!l)
    return r;
  if (!r)
    return l;
  return IndexWindow{std::min(l->lo, r->lo), std::max(l->hi, r->hi)};
}

Oracle::Oracle(const OracleConfig& config)
    : window_(config.window), fib_(recurrence_table(0, 1, config.window)),
      lucas_(recurrence_table(2, 1, config.window)) {
  if (window_.lo > window_.hi)
    throw OracleError("empty oracle window");
  for (const auto& s : config.seeds)
    gens_.emplace_back(s, recurrence_table(s.g0, s.g1, window_));
}

const BigInt& Oracle::lookup(const std::vector<BigInt>& t, Index n) const {
  if (n < window_.lo || n > window_.hi)
    throw OracleError("index " + std::to_string(n) + " outside oracle window [" + std::to_string(window_.lo) + ", " +
                      std::to_string(window_.hi) + "]");
  return t[static_cast<std::size_t>(n - window_.lo)];
}

const BigInt& Oracle::gen(const seq::Seed& seed, Index n) const {
  for (const auto& [s, t] : gens_)
    if (s == seed)
      return lookup(t, n);
  throw OracleError("oracle has no table for seed (" + to_decimal(seed.g0) + "," + to_decimal(seed.g1) + ")");
}

BigInt Oracle::eval(const NodePtr& ast, const verify::ParamPoint& pt) const { return Walker(*this, pt).eval(ast); }

BigInt oracle_eval(const NodePtr& ast, const verify::ParamPoint& pt) {
  std::vector<std::pair<std::string, verify::Range>> ranges;
  for (const auto& [k, v] : pt.values)
    ranges.emplace_back(k, verify::Range{v, v});
  const IndexWindow w = index_range(ast, ranges).value_or(IndexWindow{0, 1});
  return Oracle(OracleConfig{w, {pt.seed}}).eval(ast, pt);
}

BigInt pascal_binomial(Index n, Index k) {
  if (n < 0 || k < 0 || k > n)
    return 0;
  static std::mutex mu;
  static std::vector<std::vector<BigInt>> rows{{1}};
  std::lock_guard lock(mu);
  while (static_cast<Index>(rows.size()) <= n) {
    const auto& prev = rows.back();
    std::vector<BigInt> row(prev.size() + 1);
    row.front() = 1;
    row.back() = 1;
    // C(r, k) = C(r-1, k) + C(r-1, k-1)
    for (std::size_t i = 1; i + 1 < row.size(); ++i)
      row[i] = prev[i] + prev[i - 1];
    rows.push_back(std::move(row));
  }
  return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

} // namespace fibkit::oracle
