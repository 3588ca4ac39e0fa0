#include <gtest/gtest.h>

#include "fibkit/report.hpp"
#include "fibkit/verify.hpp"

using namespace fibkit;
using namespace fibkit::verify;

namespace {

const dsl::Identity& entry(const char* name) {
  const dsl::Identity* id = dsl::builtin_catalog().find(name);
  if (!id)
    throw std::runtime_error(std::string("missing catalog entry ") + name);
  return *id;
}

ParamPoint point(Assignment values, seq::Seed seed = seq::Seed::fibonacci()) {
  return ParamPoint{std::move(values), std::move(seed)};
}

GridSpec small_grid() {
  GridSpec g = GridSpec::standard();
  g.rank = {0, 3};
  g.index = {-4, 4};
  return g;
}

bool same_failures(const VerifyReport& a, const VerifyReport& b) {
  if (a.failures.size() != b.failures.size())
    return false;
  for (std::size_t i = 0; i < a.failures.size(); ++i) {
    const Failure &x = a.failures[i], &y = b.failures[i];
    if (x.point != y.point || x.seed != y.seed || x.lhs != y.lhs || x.rhs != y.rhs)
      return false;
  }
  return true;
}

} // namespace

TEST(Eval, FlagshipSidesAtAPoint) {
  const auto& id = entry("Eq1");
  const ParamPoint pt = point({{"n", 1}, {"m", 2}, {"p", 5}, {"q", 3}});
  EXPECT_EQ(eval_side(id.lhs, pt), 4);
  EXPECT_EQ(eval_side(id.rhs, pt), 4);
}

TEST(Eval, LucasWeightedSideAtAPoint) {
  const auto& id = entry("Eq3");
  const ParamPoint pt = point({{"n", 2}, {"m", 2}, {"p", 0}, {"q", 1}});
  EXPECT_EQ(eval_side(id.lhs, pt), 3);
  EXPECT_EQ(eval_side(id.lhs, pt), eval_side(id.rhs, pt));
}

TEST(Eval, Builtins) {
  auto ev = [](const char* src, Assignment a = {}) {
    std::vector<std::string> names;
    for (const auto& [k, v] : a)
      names.push_back(k);
    return eval_side(dsl::parse_expression(src, names), point(std::move(a)));
  };
  EXPECT_EQ(ev("binom(5, 2)"), 10);
  EXPECT_EQ(ev("binom(5, 7)"), 0);
  EXPECT_EQ(ev("binom(5, -1)"), 0);
  EXPECT_EQ(ev("sign(3)"), -1);
  EXPECT_EQ(ev("sign(-4)"), 1);
  EXPECT_EQ(ev("pow5floor(5)"), 25);
  EXPECT_EQ(ev("pow5floor(0)"), 1);
  EXPECT_EQ(ev("sum(k, 0, 4, k^2)"), 30);
  EXPECT_EQ(ev("sum(k, 3, 2, 7)"), 0);
  EXPECT_EQ(ev("F(-6) + L(-3)"), -8 - 4);
  EXPECT_EQ(ev("2^100"), BigInt("1267650600228229401496703205376"));
  EXPECT_THROW(ev("2^(0-1)"), EvalError);
  EXPECT_THROW(eval_side(dsl::unary(dsl::NodeKind::Fib, dsl::sym("n")), point({{"m", 1}})), EvalError);
  EXPECT_EQ(eval_side(dsl::parse_expression("G(5)", {}), point({}, seq::Seed{3, 7})), 44);
}

TEST(Grid, FlagshipPassesOnStandardGrid) {
  const VerifyReport r = verify_grid(entry("Eq1"), GridSpec::standard());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.total, 5u * 17 * 17 * 17 * 4);
  EXPECT_EQ(r.mode, Mode::Grid);
}

TEST(Grid, OverrideControlsPointCount) {
  const dsl::Identity id = dsl::parse_identity("G(p) == G(p)", {"p"});
  GridSpec g = GridSpec::standard();
  g.overrides = {{"p", {-10, 10}}};
  const VerifyReport r = verify_grid_serial(id, g);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.total, 21u * 4);
}

TEST(Grid, CorruptedSignFails) {
  const dsl::Identity bad = dsl::parse_identity(
      "sum(k, 0, n, binom(n, k)*sign(k)*F(m)^k*F(m + q)^(n - k)*G(p + q*k)) == -sign(n*m)*F(q)^n*G(p - n*m)",
      {"n", "m", "p", "q"});
  const VerifyReport r = verify_grid(bad, small_grid());
  ASSERT_FALSE(r.passed());
  const Failure& f = r.failures.front();
  EXPECT_EQ(f.lhs, -f.rhs);
  ASSERT_TRUE(f.seed);
  // Lexicographic first point: every parameter at its lower bound.
  EXPECT_EQ(f.point, (Assignment{{"n", 0}, {"m", -4}, {"p", -4}, {"q", -4}}));
}

TEST(Grid, EmptyRangesRejected) {
  GridSpec g = GridSpec::standard();
  g.index = {3, 2};
  EXPECT_THROW(verify_grid(entry("Eq14"), g), std::invalid_argument);
  g = GridSpec::standard();
  g.seeds.clear();
  EXPECT_THROW(verify_grid(entry("Eq1"), g), std::invalid_argument);
}

TEST(Grid, SerialAndParallelAgree) {
  const dsl::Identity bad = dsl::parse_identity("F(m + q)*F(p) - F(m)*F(p + q) == F(q)*F(p - m)", {"m", "p", "q"});
  const GridSpec g = small_grid();
  const VerifyReport serial = verify_grid_serial(bad, g);
  ASSERT_FALSE(serial.passed());
  for (int workers : {1, 2, 3, 8}) {
    const VerifyReport par = verify_grid(bad, g, workers);
    EXPECT_EQ(par.total, serial.total);
    EXPECT_TRUE(same_failures(serial, par)) << workers << " workers";
    EXPECT_EQ(report::to_json(par, false).dump(), report::to_json(serial, false).dump());
  }
}

TEST(Grid, AllCatalogEntriesPass) {
  for (const auto& id : dsl::builtin_catalog().entries())
    EXPECT_TRUE(verify_grid(id, small_grid()).passed()) << id.name;
}

TEST(Expansion, ChildrenMatchParents) {
  const auto& cat = dsl::builtin_catalog();
  for (const auto& id : cat.entries()) {
    if (!id.expands)
      continue;
    const VerifyReport r = check_expansion(id, *cat.find(id.expands->parent), small_grid());
    EXPECT_TRUE(r.passed()) << id.name;
    EXPECT_EQ(r.mode, Mode::Expansion);
  }
}

TEST(Recurrence, SidesSatisfyTheirRecurrence) {
  GridSpec g = GridSpec::standard();
  g.rank = {1, 4};
  g.index = {-5, 5};
  EXPECT_TRUE(check_recurrence(entry("Eq1"), dsl::Side::Lhs, Weights::Fibonacci, g).passed());
  EXPECT_TRUE(check_recurrence(entry("Eq1"), dsl::Side::Rhs, Weights::Fibonacci, g).passed());
  EXPECT_TRUE(check_recurrence(entry("Eq2"), dsl::Side::Rhs, Weights::Lucas, g).passed());
  EXPECT_FALSE(check_recurrence(entry("Eq2"), dsl::Side::Lhs, Weights::Fibonacci, g).passed());
}

TEST(Recurrence, RequiresPositiveRank) {
  GridSpec g = GridSpec::standard();
  EXPECT_THROW(check_recurrence(entry("Eq1"), dsl::Side::Lhs, Weights::Fibonacci, g), std::invalid_argument);
  g.rank = {1, 2};
  EXPECT_THROW(check_recurrence(entry("Eq14"), dsl::Side::Lhs, Weights::Fibonacci, g), std::invalid_argument);
}

TEST(Symbolic, FixedRankProofs) {
  for (const char* name : {"Eq1", "Eq2", "Eq3", "Eq4"})
    for (Index n = 1; n <= 4; ++n) {
      const VerifyReport r = prove_symbolic(entry(name), n);
      EXPECT_TRUE(r.passed()) << name << " n=" << n;
      EXPECT_EQ(r.total, 8u);
      EXPECT_EQ(r.fixed, (Assignment{{"n", n}}));
    }
}

TEST(Symbolic, RankFreeEntries) {
  const VerifyReport r14 = prove_symbolic(entry("Eq14"));
  EXPECT_TRUE(r14.passed());
  EXPECT_EQ(r14.total, 8u);
  const VerifyReport r11 = prove_symbolic(entry("Lemma11"));
  EXPECT_TRUE(r11.passed());
  EXPECT_EQ(r11.total, 4u);
}

TEST(Symbolic, MutantLeavesResidual) {
  const dsl::Identity bad =
      dsl::parse_identity("F(m + q)*F(p) - F(m)*F(p + q) == 2*sign(m)*F(q)*F(p - m)", {"m", "p", "q"});
  const VerifyReport r = prove_symbolic(bad);
  ASSERT_FALSE(r.passed());
  EXPECT_FALSE(r.failures.front().residual.empty());
  EXPECT_NE(r.failures.front().residual.find("phi^"), std::string::npos);
}

TEST(Symbolic, RejectsNonAffineStructure) {
  EXPECT_THROW(prove_symbolic(dsl::parse_identity("F(m*n) == F(n*m)", {"m", "n"})), SymbolicError);
  EXPECT_THROW(prove_symbolic(dsl::parse_identity("F(n)^m == F(n)^m", {"m", "n"})), SymbolicError);
  EXPECT_THROW(prove_symbolic(entry("Eq1")), std::invalid_argument);
}

TEST(CaseSplit, Examples) {
  EXPECT_EQ(case_split_value(5, 2, 1), 2);
  EXPECT_EQ(case_split_value(5, 1, 1), 7);
  EXPECT_EQ(case_split_value(0, 0, 0), 0);
  for (Index n = 0; n <= 6; ++n)
    for (Index m = -4; m <= 4; ++m)
      for (Index p = -6; p <= 6; ++p)
        EXPECT_EQ(case_split_value(p, n, m), n % 2 == 0 ? seq::fib(p - n * m) : seq::lucas(p - n * m));
}

TEST(Report, JsonShape) {
  const VerifyReport r = verify_grid(entry("Lemma11"), small_grid());
  const report::Json j = report::to_json(r, false);
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["identity"], "Lemma11");
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_TRUE(j["elapsed_ms"].is_null());
  EXPECT_TRUE(j["failures"].empty());
  EXPECT_EQ(report::csv_header(), "identity,point,seed,lhs,rhs,status\n");
}
