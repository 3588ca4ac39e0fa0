#include <algorithm>

#include "fibkit/verify.hpp"

namespace fibkit::verify {

using dsl::NodeKind;
using dsl::NodePtr;

namespace {

BigInt binomial(const BigInt& n, const BigInt& k) {
  if (sgn(k) < 0 || k > n)
    return 0;
  BigInt kk = k;
  if (BigInt(n - k) < kk)
    kk = n - k;
  const Index steps = to_index(kk);
  // C(n, i) = C(n, i-1) * (n - i + 1) / i, each division exact.
  BigInt r = 1;
  for (Index i = 1; i <= steps; ++i) {
    r *= n - kk + i;
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return r;
}

class Evaluator {
public:
  explicit Evaluator(const ParamPoint& pt) : pt_(pt) {}

  BigInt eval(const NodePtr& n) {
    const auto& a = n->args;
    switch (n->kind) {
    case NodeKind::Literal:
      return n->literal;
    case NodeKind::Symbol:
      return big(lookup(n->name));
    case NodeKind::Neg:
      return -eval(a[0]);
    case NodeKind::Add:
      return eval(a[0]) + eval(a[1]);
    case NodeKind::Sub:
      return eval(a[0]) - eval(a[1]);
    case NodeKind::Mul:
      return eval(a[0]) * eval(a[1]);
    case NodeKind::Pow: {
      BigInt base = eval(a[0]);
      const Index e = index_of(a[1]);
      if (e < 0)
        throw EvalError("negative exponent " + std::to_string(e) + " in " + dsl::print(n));
      BigInt r;
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
      return r;
    }
    case NodeKind::Fib:
      return seq::fib(index_of(a[0]));
    case NodeKind::Lucas:
      return seq::lucas(index_of(a[0]));
    case NodeKind::Gen:
      return seq::gen(pt_.seed, index_of(a[0]));
    case NodeKind::Binom:
      return binomial(eval(a[0]), eval(a[1]));
    case NodeKind::Sign:
      return sign_pow(index_of(a[0]));
    case NodeKind::Pow5Floor: {
      const Index e = index_of(a[0]);
      if (e < 0)
        throw EvalError("pow5floor of negative argument " + std::to_string(e));
      BigInt r;
      mpz_ui_pow_ui(r.get_mpz_t(), 5, static_cast<unsigned long>(e / 2));
      return r;
    }
    case NodeKind::Sum: {
      const Index lo = index_of(a[0]);
      const Index hi = index_of(a[1]);
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
    throw EvalError("unknown node");
  }

private:
  Index index_of(const NodePtr& n) {
    const BigInt v = eval(n);
    if (!mpz_fits_slong_p(v.get_mpz_t()))
      throw EvalError("value of " + dsl::print(n) + " is too large for an index");
    return to_index(v);
  }

  Index lookup(const std::string& name) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == name)
        return it->second;
    for (const auto& [k, v] : pt_.values)
      if (k == name)
        return v;
    throw EvalError("symbol '" + name + "' has no value at this point");
  }

  const ParamPoint& pt_;
  Assignment bound_;
};

} // namespace

BigInt eval_side(const NodePtr& ast, const ParamPoint& pt) { return Evaluator(pt).eval(ast); }

BigInt case_split_value(Index p, Index n, Index m) {
  const Index base = p - n * m;
  BigInt v = seq::fib(base + 1) - sign_pow(n) * seq::fib(base - 1);
  const BigInt expected = is_odd(n) ? seq::lucas(base) : seq::fib(base);
  if (v != expected)
    throw InternalFault("case split failed at p=" + std::to_string(p) + ", n=" + std::to_string(n) +
                        ", m=" + std::to_string(m));
  return v;
}

} // namespace fibkit::verify
