#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>

#include <omp.h>

#include "fibkit/verify.hpp"

namespace fibkit::verify {

std::string_view mode_name(Mode m) {
  switch (m) {
  case Mode::Grid:
    return "grid";
  case Mode::Recurrence:
    return "recurrence";
  case Mode::Symbolic:
    return "symbolic";
  case Mode::Expansion:
    return "expansion";
  }
  return "unknown";
}

namespace {

struct Axis {
  std::string name;
  Range range;
};

/// Mixed-radix walk over axes x seeds; the seed is the fastest-moving digit,
/// so ordinal order is lexicographic order of (values..., seed index).
class PointSpace {
public:
  PointSpace(std::vector<Axis> axes, std::vector<seq::Seed> seeds) : axes_(std::move(axes)), seeds_(std::move(seeds)) {
    total_ = seeds_.size();
    for (const auto& a : axes_)
      total_ *= static_cast<std::size_t>(a.range.size());
  }

  std::size_t total() const { return total_; }

  ParamPoint at(std::size_t ordinal) const {
    ParamPoint pt;
    pt.seed = seeds_[ordinal % seeds_.size()];
    ordinal /= seeds_.size();
    pt.values.resize(axes_.size());
    for (std::size_t i = axes_.size(); i-- > 0;) {
      const auto width = static_cast<std::size_t>(axes_[i].range.size());
      pt.values[i] = {axes_[i].name, axes_[i].range.lo + static_cast<Index>(ordinal % width)};
      ordinal /= width;
    }
    return pt;
  }

private:
  std::vector<Axis> axes_;
  std::vector<seq::Seed> seeds_;
  std::size_t total_ = 0;
};

std::string describe(const ParamPoint& pt) {
  std::string s;
  for (const auto& [k, v] : pt.values)
    s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return s + ", seed=(" + to_decimal(pt.seed.g0) + "," + to_decimal(pt.seed.g1) + ")";
}

std::optional<Failure> checked(const PointCheck& check, const ParamPoint& pt) {
  try {
    return check(pt);
  } catch (const EvalError& e) {
    throw EvalError(std::string(e.what()) + " at " + describe(pt));
  } catch (const std::out_of_range& e) {
    throw EvalError(std::string(e.what()) + " at " + describe(pt));
  }
}

std::vector<Failure> run_serial(const PointSpace& space, const PointCheck& check) {
  std::vector<Failure> failures;
  for (std::size_t i = 0; i < space.total(); ++i)
    if (auto f = checked(check, space.at(i)))
      failures.push_back(std::move(*f));
  return failures;
}

std::vector<Failure> run_parallel(const PointSpace& space, const PointCheck& check, int workers) {
  const auto total = static_cast<std::int64_t>(space.total());
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::vector<std::pair<std::size_t, Failure>> found;
  std::exception_ptr error;
  std::int64_t error_at = total;

#pragma omp parallel num_threads(threads)
  {
    std::vector<std::pair<std::size_t, Failure>> local;
    std::exception_ptr local_error;
    std::int64_t local_error_at = total;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t i = 0; i < total; ++i) {
      if (local_error)
        continue;
      try {
        if (auto f = checked(check, space.at(static_cast<std::size_t>(i))))
          local.emplace_back(static_cast<std::size_t>(i), std::move(*f));
      } catch (...) {
        local_error = std::current_exception();
        local_error_at = i;
      }
    }
#pragma omp critical(fibkit_merge)
    {
      for (auto& f : local)
        found.push_back(std::move(f));
      if (local_error && local_error_at < error_at) {
        error = local_error;
        error_at = local_error_at;
      }
    }
  }
  if (error)
    std::rethrow_exception(error);

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Failure> failures;
  failures.reserve(found.size());
  for (auto& [ordinal, f] : found)
    failures.push_back(std::move(f));
  return failures;
}

std::vector<Axis> axes_for(const dsl::Identity& id, const GridSpec& grid) {
  std::vector<Axis> axes;
  for (const auto& p : id.params)
    axes.push_back({p, grid.range_for(id, p)});
  return axes;
}

VerifyReport report_header(const dsl::Identity& id, Mode mode, const std::vector<Axis>& axes,
                           const std::vector<seq::Seed>& seeds) {
  VerifyReport r;
  r.identity = id.name;
  r.paper_tag = id.paper_tag;
  r.mode = mode;
  for (const auto& a : axes)
    r.ranges.emplace_back(a.name, a.range);
  r.seeds = seeds;
  return r;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

PointCheck side_equality(const dsl::Identity& id) {
  return [&id](const ParamPoint& pt) -> std::optional<Failure> {
    BigInt l = eval_side(id.lhs, pt);
    BigInt r = eval_side(id.rhs, pt);
    if (l == r)
      return std::nullopt;
    return Failure{pt.values, pt.seed, std::move(l), std::move(r), {}};
  };
}

VerifyReport grid_run(const dsl::Identity& id, const GridSpec& grid, std::optional<int> workers) {
  grid.validate(id);
  const auto t0 = std::chrono::steady_clock::now();
  const auto axes = axes_for(id, grid);
  VerifyReport report = report_header(id, Mode::Grid, axes, grid.seeds);
  const PointSpace space(axes, grid.seeds);
  const PointCheck check = side_equality(id);
  report.total = space.total();
  report.failures = workers ? run_parallel(space, check, *workers) : run_serial(space, check);
  report.elapsed_ms = elapsed_since(t0);
  return report;
}

} // namespace

VerifyReport verify_grid_serial(const dsl::Identity& id, const GridSpec& grid) {
  return grid_run(id, grid, std::nullopt);
}

VerifyReport verify_grid(const dsl::Identity& id, const GridSpec& grid, int workers) {
  return grid_run(id, grid, workers);
}

VerifyReport run_grid_check(const dsl::Identity& id, const GridSpec& grid, Mode mode, std::string detail,
                            const PointCheck& check, int workers) {
  grid.validate(id);
  const auto t0 = std::chrono::steady_clock::now();
  const auto axes = axes_for(id, grid);
  VerifyReport report = report_header(id, mode, axes, grid.seeds);
  report.detail = std::move(detail);
  const PointSpace space(axes, grid.seeds);
  report.total = space.total();
  report.failures = run_parallel(space, check, workers);
  report.elapsed_ms = elapsed_since(t0);
  return report;
}

VerifyReport check_recurrence(const dsl::Identity& id, dsl::Side side, Weights weights, const GridSpec& grid,
                              int workers) {
  for (const char* p : {"n", "m", "p", "q"})
    if (std::find(id.params.begin(), id.params.end(), p) == id.params.end())
      throw std::invalid_argument("check_recurrence: identity " + id.name + " lacks parameter " + p);
  if (grid.range_for(id, "n").lo < 1)
    throw std::invalid_argument("check_recurrence: rank range must start at n >= 1");

  std::string detail = std::string(side == dsl::Side::Lhs ? "lhs" : "rhs") +
                       (weights == Weights::Fibonacci ? ", F-weighted" : ", L-weighted");
  const dsl::NodePtr& ast = dsl::side_of(id, side);
  auto weight = [weights](Index i) { return weights == Weights::Fibonacci ? seq::fib(i) : seq::lucas(i); };

  const PointCheck check = [&](const ParamPoint& pt) -> std::optional<Failure> {
    const Index n = pt.get("n");
    const Index m = pt.get("m");
    const Index p = pt.get("p");
    const Index q = pt.get("q");
    BigInt s = eval_side(ast, pt);
    const ParamPoint prev = pt.with("n", n - 1);
    BigInt rec = weight(m + q) * eval_side(ast, prev) - weight(m) * eval_side(ast, prev.with("p", p + q));
    if (s == rec)
      return std::nullopt;
    return Failure{pt.values, pt.seed, std::move(s), std::move(rec), {}};
  };
  return run_grid_check(id, grid, Mode::Recurrence, std::move(detail), check, workers);
}

VerifyReport check_expansion(const dsl::Identity& child, const dsl::Identity& parent, const GridSpec& grid,
                             int workers) {
  if (!child.expands || child.expands->parent != parent.name)
    throw std::invalid_argument("check_expansion: " + child.name + " does not expand " + parent.name);
  for (const auto& p : parent.params) {
    const auto& b = child.expands->bindings;
    if (std::none_of(b.begin(), b.end(), [&](const auto& kv) { return kv.first == p; }))
      throw std::invalid_argument("check_expansion: no binding for " + parent.name + " parameter " + p);
  }
  const PointCheck check = [&](const ParamPoint& pt) -> std::optional<Failure> {
    ParamPoint mapped;
    mapped.seed = pt.seed;
    for (const auto& [param, expr] : child.expands->bindings)
      mapped.values.emplace_back(param, to_index(eval_side(expr, pt)));
    for (dsl::Side side : {dsl::Side::Lhs, dsl::Side::Rhs}) {
      BigInt mine = eval_side(dsl::side_of(child, side), pt);
      BigInt theirs = eval_side(dsl::side_of(parent, side), mapped);
      if (mine != theirs)
        return Failure{pt.values, pt.seed, std::move(mine), std::move(theirs), {}};
    }
    return std::nullopt;
  };
  return run_grid_check(child, grid, Mode::Expansion, "against " + parent.name, check, workers);
}

} // namespace fibkit::verify
