#include <algorithm>
#include <array>
#include <chrono>
#include <map>

#include "fibkit/verify.hpp"
#include "fibkit/zphi.hpp"

// Binet-form prover. With every rank parameter fixed, each sequence argument
// is affine in up to three free parameters x_i. Writing X_i = phi^{x_i} and
// fixing the parity of every x_i turns (1 - phi)^e = (-1)^e phi^{-e} into a
// signed Laurent monomial, so each side becomes a Laurent polynomial in X_i
// over Q(phi). G is expanded as (s_plus F + s_zero L) / 2 with formal seed
// scalars s_plus = G_{-1} + G_1 and s_zero = G_0.
namespace fibkit::verify {

namespace {

using dsl::NodeKind;
using dsl::NodePtr;
using zphi::GoldenInt;
using zphi::GoldenRat;
using zphi::LaurentPoly3;

constexpr std::size_t kMaxFree = 3;

/// c0 + sum_i coeff[i] * x_i over the free parameters.
struct Affine {
  Index c0 = 0;
  std::array<Index, kMaxFree> coeff{};

  bool is_constant() const { return std::all_of(coeff.begin(), coeff.end(), [](Index c) { return c == 0; }); }
};

/// Polynomial in the formal seed scalars (s_plus, s_zero) with LaurentPoly3
/// coefficients, kept sparse.
class SeedPoly {
public:
  using Key = std::array<Index, 2>;

  SeedPoly() = default;
  SeedPoly(LaurentPoly3 p) { add({0, 0}, p); }

  static SeedPoly seed_term(Key k, LaurentPoly3 p) {
    SeedPoly s;
    s.add(k, p);
    return s;
  }

  bool is_zero() const { return terms_.empty(); }

  SeedPoly& operator+=(const SeedPoly& o) {
    for (const auto& [k, p] : o.terms_)
      add(k, p);
    return *this;
  }
  SeedPoly& operator-=(const SeedPoly& o) {
    for (const auto& [k, p] : o.terms_)
      add(k, -p);
    return *this;
  }
  friend SeedPoly operator*(const SeedPoly& a, const SeedPoly& b) {
    SeedPoly r;
    for (const auto& [ka, pa] : a.terms_)
      for (const auto& [kb, pb] : b.terms_)
        r.add({ka[0] + kb[0], ka[1] + kb[1]}, pa * pb);
    return r;
  }
  SeedPoly operator-() const {
    SeedPoly r;
    r -= *this;
    return r;
  }

  std::string to_string(const std::array<std::string, 3>& names) const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto& [k, p] : terms_) {
      if (!out.empty())
        out += " + ";
      std::string scalars;
      if (k[0])
        scalars += "s_plus" + (k[0] > 1 ? "^" + std::to_string(k[0]) : "") + "*";
      if (k[1])
        scalars += "s_zero" + (k[1] > 1 ? "^" + std::to_string(k[1]) : "") + "*";
      out += scalars + "[" + p.to_string(names) + "]";
    }
    return out;
  }

private:
  void add(const Key& k, const LaurentPoly3& p) {
    if (p.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(k, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  std::map<Key, LaurentPoly3> terms_;
};

SeedPoly power(SeedPoly base, Index e) {
  SeedPoly acc(LaurentPoly3(GoldenRat(1)));
  while (e > 0) {
    if (e & 1)
      acc = acc * base;
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return acc;
}

class Expander {
public:
  Expander(std::vector<std::string> free_params, Assignment fixed, std::array<int, kMaxFree> parity)
      : free_(std::move(free_params)), fixed_(std::move(fixed)), parity_(parity) {}

  SeedPoly value(const NodePtr& n) {
    const auto& a = n->args;
    switch (n->kind) {
    case NodeKind::Literal:
      return constant(n->literal);
    case NodeKind::Symbol:
      return constant(big(constant_index(n)));
    case NodeKind::Neg:
      return -value(a[0]);
    case NodeKind::Add: {
      SeedPoly r = value(a[0]);
      return r += value(a[1]);
    }
    case NodeKind::Sub: {
      SeedPoly r = value(a[0]);
      return r -= value(a[1]);
    }
    case NodeKind::Mul:
      return value(a[0]) * value(a[1]);
    case NodeKind::Pow: {
      const Index e = constant_index(a[1]);
      if (e < 0)
        throw SymbolicError("negative exponent in " + dsl::print(n));
      return power(value(a[0]), e);
    }
    case NodeKind::Fib:
      return SeedPoly(binet(affine(a[0]), false));
    case NodeKind::Lucas:
      return SeedPoly(binet(affine(a[0]), true));
    case NodeKind::Gen: {
      const Affine e = affine(a[0]);
      const GoldenRat half = GoldenRat(GoldenInt(1), 2);
      SeedPoly r = SeedPoly::seed_term({1, 0}, binet(e, false) * half);
      return r += SeedPoly::seed_term({0, 1}, binet(e, true) * half);
    }
    case NodeKind::Binom:
      return constant(binomial(constant_index(a[0]), constant_index(a[1])));
    case NodeKind::Sign:
      return constant(sign_of(affine(a[0])));
    case NodeKind::Pow5Floor: {
      const Index e = constant_index(a[0]);
      if (e < 0)
        throw SymbolicError("pow5floor of negative argument in " + dsl::print(n));
      BigInt r;
      mpz_ui_pow_ui(r.get_mpz_t(), 5, static_cast<unsigned long>(e / 2));
      return constant(r);
    }
    case NodeKind::Sum: {
      const Index lo = constant_index(a[0]);
      const Index hi = constant_index(a[1]);
      SeedPoly total;
      bound_.emplace_back(n->name, 0);
      for (Index k = lo; k <= hi; ++k) {
        bound_.back().second = k;
        total += value(a[2]);
      }
      bound_.pop_back();
      return total;
    }
    }
    throw SymbolicError("unknown node");
  }

private:
  static SeedPoly constant(const BigInt& v) { return SeedPoly(LaurentPoly3(GoldenRat(v))); }

  static BigInt binomial(Index n, Index k) {
    if (k < 0 || k > n)
      return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
  }

  Affine affine(const NodePtr& n) {
    const auto& a = n->args;
    switch (n->kind) {
    case NodeKind::Literal:
      return {to_index(n->literal), {}};
    case NodeKind::Symbol: {
      for (std::size_t i = 0; i < free_.size(); ++i)
        if (free_[i] == n->name) {
          Affine r;
          r.coeff[i] = 1;
          return r;
        }
      return {lookup(n->name), {}};
    }
    case NodeKind::Neg:
      return scaled(affine(a[0]), -1);
    case NodeKind::Add:
    case NodeKind::Sub: {
      Affine l = affine(a[0]);
      const Affine r = scaled(affine(a[1]), n->kind == NodeKind::Add ? 1 : -1);
      l.c0 += r.c0;
      for (std::size_t i = 0; i < kMaxFree; ++i)
        l.coeff[i] += r.coeff[i];
      return l;
    }
    case NodeKind::Mul: {
      const Affine l = affine(a[0]);
      const Affine r = affine(a[1]);
      if (l.is_constant())
        return scaled(r, l.c0);
      if (r.is_constant())
        return scaled(l, r.c0);
      break;
    }
    case NodeKind::Pow: {
      const Affine b = affine(a[0]);
      const Affine e = affine(a[1]);
      if (b.is_constant() && e.is_constant() && e.c0 >= 0) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), big(b.c0).get_mpz_t(), static_cast<unsigned long>(e.c0));
        return {to_index(r), {}};
      }
      break;
    }
    default:
      break;
    }
    throw SymbolicError("non-affine index expression: " + dsl::print(n));
  }

  static Affine scaled(Affine x, Index s) {
    x.c0 *= s;
    for (auto& c : x.coeff)
      c *= s;
    return x;
  }

  Index constant_index(const NodePtr& n) {
    const Affine x = affine(n);
    if (!x.is_constant())
      throw SymbolicError("expression must be constant once the rank is fixed: " + dsl::print(n));
    return x.c0;
  }

  Index lookup(const std::string& name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == name)
        return it->second;
    for (const auto& [k, v] : fixed_)
      if (k == name)
        return v;
    throw SymbolicError("symbol '" + name + "' is neither free nor fixed");
  }

  /// (-1)^e under the current parity assignment.
  int sign_of(const Affine& e) const {
    Index s = e.c0;
    for (std::size_t i = 0; i < kMaxFree; ++i)
      s += e.coeff[i] * parity_[i];
    return sign_pow(s);
  }

  /// F_e = (phi^e - (1-phi)^e) / sqrt5 or L_e = phi^e + (1-phi)^e, where
  /// phi^e = phi^c0 * prod X_i^c_i and (1-phi)^e = (-1)^e phi^-c0 * prod X_i^-c_i.
  LaurentPoly3 binet(const Affine& e, bool lucas) const {
    const zphi::Exponents up{e.coeff[0], e.coeff[1], e.coeff[2]};
    const zphi::Exponents down{-e.coeff[0], -e.coeff[1], -e.coeff[2]};
    const int sigma = sign_of(e);
    LaurentPoly3 plus = LaurentPoly3::monomial(GoldenRat(zphi::phi_pow(e.c0)), up);
    LaurentPoly3 minus = LaurentPoly3::monomial(GoldenRat(zphi::phi_pow(-e.c0)) * GoldenRat(sigma), down);
    if (lucas)
      return plus + minus;
    return (plus - minus) * GoldenRat(GoldenInt::sqrt5()).inverse();
  }

  std::vector<std::string> free_;
  Assignment fixed_;
  std::array<int, kMaxFree> parity_;
  Assignment bound_;
};

} // namespace

VerifyReport prove_symbolic(const dsl::Identity& id, std::optional<Index> rank) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ranks = dsl::rank_params(id);
  if (!ranks.empty() && !rank)
    throw std::invalid_argument(id.name + " sums up to a rank parameter; a fixed rank value is required");
  if (rank && *rank < 0)
    throw std::invalid_argument("rank value must be >= 0");

  Assignment fixed;
  std::vector<std::string> free;
  for (const auto& p : id.params) {
    if (std::find(ranks.begin(), ranks.end(), p) != ranks.end())
      fixed.emplace_back(p, *rank);
    else
      free.push_back(p);
  }
  if (free.size() > kMaxFree)
    throw SymbolicError(id.name + " has " + std::to_string(free.size()) +
                        " free parameters after fixing the rank; at most 3 are supported");

  VerifyReport report;
  report.identity = id.name;
  report.paper_tag = id.paper_tag;
  report.mode = Mode::Symbolic;
  report.fixed = fixed;

  std::array<std::string, 3> names;
  for (std::size_t i = 0; i < kMaxFree; ++i)
    names[i] = i < free.size() ? "phi^" + free[i] : "_";

  const std::size_t cases = std::size_t{1} << free.size();
  report.total = cases;
  for (std::size_t c = 0; c < cases; ++c) {
    std::array<int, kMaxFree> parity{};
    for (std::size_t i = 0; i < free.size(); ++i)
      parity[i] = static_cast<int>((c >> (free.size() - 1 - i)) & 1U);
    Expander ex(free, fixed, parity);
    SeedPoly residual = ex.value(id.lhs);
    residual -= ex.value(id.rhs);
    if (!residual.is_zero()) {
      Failure f;
      for (std::size_t i = 0; i < free.size(); ++i)
        f.point.emplace_back(free[i], parity[i]);
      f.residual = residual.to_string(names);
      report.failures.push_back(std::move(f));
    }
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

} // namespace fibkit::verify
