#include <algorithm>
#include <stdexcept>

#include "fibkit/params.hpp"

namespace fibkit::verify {

Index ParamPoint::get(std::string_view name) const {
  for (const auto& [k, v] : values)
    if (k == name)
      return v;
  throw std::out_of_range("parameter '" + std::string(name) + "' is not assigned");
}

ParamPoint ParamPoint::with(std::string_view name, Index value) const {
  ParamPoint out = *this;
  for (auto& [k, v] : out.values)
    if (k == name) {
      v = value;
      return out;
    }
  out.values.emplace_back(std::string(name), value);
  return out;
}

GridSpec GridSpec::standard() {
  GridSpec g;
  g.seeds = standard_seeds();
  return g;
}

std::vector<seq::Seed> GridSpec::standard_seeds() { return {{0, 1}, {2, 1}, {3, 7}, {-4, 5}}; }

Range GridSpec::range_for(const dsl::Identity& id, const std::string& param) const {
  for (const auto& [name, r] : overrides)
    if (name == param)
      return r;
  const auto ranks = dsl::rank_params(id);
  return std::find(ranks.begin(), ranks.end(), param) != ranks.end() ? rank : index;
}

void GridSpec::validate(const dsl::Identity& id) const {
  if (seeds.empty())
    throw std::invalid_argument("grid has no seeds");
  const auto ranks = dsl::rank_params(id);
  for (const auto& p : id.params) {
    const Range r = range_for(id, p);
    if (r.lo > r.hi)
      throw std::invalid_argument("empty range " + std::to_string(r.lo) + ".." + std::to_string(r.hi) + " for " + p);
    if (r.lo < 0 && std::find(ranks.begin(), ranks.end(), p) != ranks.end())
      throw std::invalid_argument("rank parameter " + p + " bounds a sum and must be >= 0");
  }
}

} // namespace fibkit::verify
