#include <random>

#include <gtest/gtest.h>

#include "fibkit/dsl.hpp"

using namespace fibkit;
using namespace fibkit::dsl;

namespace {

const std::vector<std::string> kNMPQ{"n", "m", "p", "q"};

} // namespace

TEST(Parse, ReflexiveIdentity) {
  const Identity id = parse_identity("G(p) == G(p)", {"p"});
  EXPECT_TRUE(equal(id.lhs, unary(NodeKind::Gen, sym("p"))));
  EXPECT_TRUE(equal(id.lhs, id.rhs));
  EXPECT_EQ(pretty_print(id), "G(p) == G(p)");
}

TEST(Parse, FlagshipIdentityStructure) {
  const Identity id = parse_identity(
      "sum(k,0,n, binom(n,k)*sign(k)*F(m)^k*F(m+q)^(n-k)*G(p+q*k)) == sign(n*m)*F(q)^n*G(p-n*m)", kNMPQ);
  ASSERT_EQ(id.lhs->kind, NodeKind::Sum);
  EXPECT_EQ(id.lhs->name, "k");
  EXPECT_TRUE(equal(id.lhs->args[0], lit(0)));
  EXPECT_TRUE(equal(id.lhs->args[1], sym("n")));
  const NodePtr k = sym("k"), m = sym("m"), n = sym("n"), p = sym("p"), q = sym("q");
  const NodePtr body = binary(
      NodeKind::Mul,
      binary(NodeKind::Mul,
             binary(NodeKind::Mul,
                    binary(NodeKind::Mul, binary(NodeKind::Binom, n, k), unary(NodeKind::Sign, k)),
                    binary(NodeKind::Pow, unary(NodeKind::Fib, m), k)),
             binary(NodeKind::Pow, unary(NodeKind::Fib, binary(NodeKind::Add, m, q)), binary(NodeKind::Sub, n, k))),
      unary(NodeKind::Gen, binary(NodeKind::Add, p, binary(NodeKind::Mul, q, k))));
  EXPECT_TRUE(equal(id.lhs->args[2], body)) << print(id.lhs->args[2]);
  EXPECT_EQ(rank_params(id), std::vector<std::string>{"n"});
  EXPECT_TRUE(uses_gen(id));
  EXPECT_TRUE(equal(id.lhs, builtin_catalog().find("Eq1")->lhs));
  EXPECT_TRUE(equal(id.rhs, builtin_catalog().find("Eq1")->rhs));
}

TEST(Parse, AdditionFormula) {
  const Identity id = parse_identity("F(m+1)*F(n) + F(m)*F(n-1) == F(n+m)", {"m", "n"});
  EXPECT_EQ(id.lhs->kind, NodeKind::Add);
  EXPECT_EQ(pretty_print(id), "F(m + 1)*F(n) + F(m)*F(n - 1) == F(n + m)");
  EXPECT_TRUE(rank_params(id).empty());
  EXPECT_FALSE(uses_gen(id));
}

TEST(Parse, PrecedenceAndAssociativity) {
  auto text = [](const char* src) { return print(parse_expression(src, {"a", "b", "c"})); };
  EXPECT_EQ(text("-a^2"), "-a^2");
  EXPECT_EQ(parse_expression("-a^2", {"a"})->kind, NodeKind::Neg);
  EXPECT_EQ(text("(-a)^2"), "(-a)^2");
  EXPECT_EQ(text("((a)) + ((b*c))"), "a + b*c");
  EXPECT_EQ(text("(a + b)*c"), "(a + b)*c");
  EXPECT_EQ(text("a - (b - c)"), "a - (b - c)");
  EXPECT_EQ(text("(a - b) - c"), "a - b - c");
  EXPECT_EQ(text("a*(b*c)"), "a*(b*c)");
  EXPECT_EQ(text("a^b^c"), "a^b^c");
  EXPECT_EQ(text("(a^b)^c"), "(a^b)^c");
  EXPECT_EQ(text("2a + 3F(b)"), "2*a + 3*F(b)");
  EXPECT_EQ(text("a*-b"), "a*-b");
}

TEST(Parse, SyntaxErrorsCarryPositionAndExpectation) {
  try {
    parse_identity("F(m + ) == 1", {"m"});
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 7);
    EXPECT_EQ(e.found(), "')'");
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_identity("F(m)", {"m"}), SyntaxError);           // no '=='
  EXPECT_THROW(parse_identity("F(m) == F(m) == 1", {"m"}), SyntaxError);
  EXPECT_THROW(parse_identity("binom(m) == 1", {"m"}), SyntaxError);  // arity
  EXPECT_THROW(parse_identity("F == 1", {"m"}), SyntaxError);
  EXPECT_THROW(parse_identity("m = 1", {"m"}), SyntaxError);
  EXPECT_THROW(parse_identity("sum(m, 0, 1, m) == 1", {"m"}), SyntaxError); // shadowing
  try {
    parse_identity("1 +\n  $ == 2", {});
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Parse, ScopeCheck) {
  try {
    parse_identity("F(m + r) == F(m)", {"m"});
    FAIL() << "expected UnboundSymbolError";
  } catch (const UnboundSymbolError& e) {
    EXPECT_EQ(e.symbol(), "r");
  }
  // A summation variable is only visible inside the body.
  EXPECT_THROW(parse_identity("sum(k, 0, k, 1) == 1", {}), UnboundSymbolError);
  EXPECT_THROW(parse_identity("sum(k, 0, 2, k) == k", {}), UnboundSymbolError);
  EXPECT_NO_THROW(parse_identity("sum(k, 0, 2, k) == 3", {}));
  EXPECT_THROW(parse_identity("F(1) == 1", {"F"}), std::invalid_argument);
  EXPECT_THROW(parse_identity("m == m", {"m", "m"}), std::invalid_argument);
}

TEST(Print, MinimalParentheses) {
  const NodePtr a = sym("a"), b = sym("b");
  const NodePtr redundant = binary(NodeKind::Add, binary(NodeKind::Mul, a, b), unary(NodeKind::Neg, lit(3)));
  EXPECT_EQ(print(redundant), "a*b + -3");
  EXPECT_EQ(print(binary(NodeKind::Mul, binary(NodeKind::Sub, a, b), a)), "(a - b)*a");
}

namespace {

class AstGenerator {
public:
  explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

  NodePtr expr(int depth, std::vector<std::string> scope) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 13);
    switch (pick(rng_)) {
    case 0:
      return lit(static_cast<Index>(small(rng_)));
    case 1:
      return sym(scope[std::uniform_int_distribution<std::size_t>(0, scope.size() - 1)(rng_)]);
    case 2:
      return unary(NodeKind::Neg, expr(depth - 1, scope));
    case 3:
      return binary(NodeKind::Add, expr(depth - 1, scope), expr(depth - 1, scope));
    case 4:
      return binary(NodeKind::Sub, expr(depth - 1, scope), expr(depth - 1, scope));
    case 5:
      return binary(NodeKind::Mul, expr(depth - 1, scope), expr(depth - 1, scope));
    case 6:
      return binary(NodeKind::Pow, expr(depth - 1, scope), expr(depth - 1, scope));
    case 7:
      return unary(NodeKind::Fib, expr(depth - 1, scope));
    case 8:
      return unary(NodeKind::Lucas, expr(depth - 1, scope));
    case 9:
      return unary(NodeKind::Gen, expr(depth - 1, scope));
    case 10:
      return binary(NodeKind::Binom, expr(depth - 1, scope), expr(depth - 1, scope));
    case 11:
      return unary(std::uniform_int_distribution<int>(0, 1)(rng_) ? NodeKind::Sign : NodeKind::Pow5Floor,
                   expr(depth - 1, scope));
    default: {
      const std::string var = "k" + std::to_string(scope.size());
      NodePtr lo = expr(depth - 1, scope), hi = expr(depth - 1, scope);
      scope.push_back(var);
      return sum(var, lo, hi, expr(depth - 1, scope));
    }
    }
  }

private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> small{0, 12};
};

} // namespace

TEST(RoundTrip, RandomAsts) {
  AstGenerator gen(42);
  const std::vector<std::string> params{"n", "m", "p"};
  for (int i = 0; i < 2000; ++i) {
    const NodePtr l = gen.expr(5, params), r = gen.expr(3, params);
    const Identity id{"random", l, r, params, "", std::nullopt};
    const std::string text = pretty_print(id);
    const Identity back = parse_identity(text, params);
    ASSERT_TRUE(equal(back.lhs, l)) << text;
    ASSERT_TRUE(equal(back.rhs, r)) << text;
    ASSERT_EQ(pretty_print(back), text);
  }
}

TEST(RoundTrip, CatalogEntriesAreParsePrintFixpoints) {
  for (const auto& id : builtin_catalog().entries()) {
    const Identity back = parse_identity(pretty_print(id), id.params);
    EXPECT_TRUE(equal(back.lhs, id.lhs)) << id.name;
    EXPECT_TRUE(equal(back.rhs, id.rhs)) << id.name;
  }
  const Catalog reread = parse_catalog(print_catalog(builtin_catalog()));
  ASSERT_EQ(reread.size(), builtin_catalog().size());
  EXPECT_EQ(print_catalog(reread), print_catalog(builtin_catalog()));
}

TEST(Fuzz, RandomTokenStreamsNeverCrash) {
  const std::vector<std::string> vocab{"F", "L", "G", "binom", "sign", "pow5floor", "sum", "(", ")", ",", "+", "-",
                                       "*", "^", "==", "=", "n", "m", "k", "x", "0", "1", "17", "2p", " ", "#", "@"};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(0, 25);
  int parsed = 0;
  for (int i = 0; i < 20000; ++i) {
    std::string text;
    for (int t = len(rng); t > 0; --t)
      text += vocab[pick(rng)];
    try {
      parse_identity(text, {"n", "m"});
      ++parsed;
    } catch (const SyntaxError&) {
    } catch (const UnboundSymbolError&) {
    }
  }
  EXPECT_GE(parsed, 0);
}

TEST(Catalog, BuiltinHasAllEntries) {
  const Catalog& c = builtin_catalog();
  EXPECT_EQ(c.size(), 29u);
  for (const char* name : {"Eq1", "Eq2", "Eq3", "Eq4", "Eq8", "Lemma10", "Lemma11", "Lemma12", "Lemma13", "Eq14",
                           "Eq16", "Eq18", "Eq19"})
    EXPECT_NE(c.find(name), nullptr) << name;
  int expanded = 0;
  for (const auto& id : c.entries())
    if (id.expands)
      ++expanded;
  EXPECT_EQ(expanded, 16);
  EXPECT_EQ(c.find_by_tag("Eq(1)").size(), 1u);
  EXPECT_EQ(c.find("Eq1")->paper_tag, "Eq(1)");
}

TEST(Catalog, ExpandedLucasEntryMatchesPublishedForm) {
  const Identity* id = builtin_catalog().find("S3.n2.L-forward");
  ASSERT_NE(id, nullptr);
  const Identity expected = parse_identity(
      "L(m+p)^2*G(n) - 2*L(m)*L(m+p)*G(n+p) + L(m)^2*G(n+2p) == 5*F(p)^2*(G(n-2m+1) - G(n-2m-1))", {"n", "m", "p"});
  EXPECT_TRUE(equal(id->lhs, expected.lhs));
  EXPECT_TRUE(equal(id->rhs, expected.rhs));
  ASSERT_TRUE(id->expands);
  EXPECT_EQ(id->expands->parent, "Eq2");
  ASSERT_EQ(id->expands->bindings.size(), 4u);
  EXPECT_EQ(id->expands->bindings[0].first, "n");
  EXPECT_TRUE(equal(id->expands->bindings[0].second, lit(2)));
  EXPECT_TRUE(equal(id->expands->bindings[2].second, sym("n")));
}

TEST(Catalog, StanzaErrors) {
  EXPECT_THROW(parse_catalog("name: A\nparams: m\n"), CatalogError);
  EXPECT_THROW(parse_catalog("name: A\nparams: m\nidentity: F(m) == F(m)\n\nname: A\nparams: m\nidentity: 1 == 1\n"),
               CatalogError);
  EXPECT_THROW(parse_catalog("name: A\ncolour: red\n"), CatalogError);
  EXPECT_THROW(parse_catalog("just text\n"), CatalogError);
  try {
    parse_catalog("# header\n\nname: A\nparams: m\nidentity: F(m) == F(m +)\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_EQ(e.column(), 24);
  }
  const Catalog ok = parse_catalog("# c\nname: A\nparams: m\npaper: T\nidentity: F(m) == F(m)\n");
  ASSERT_EQ(ok.size(), 1u);
  EXPECT_EQ(ok.entries()[0].paper_tag, "T");
}
