#include <gtest/gtest.h>

#include "pgcl/classifier.h"
#include "pgcl/errors.h"
#include "pgcl/expr.h"
#include "pgcl/multiplier.h"

using namespace pgcl;

namespace {

AbelianInvariants inv(std::vector<std::uint64_t> f) { return AbelianInvariants::from_chain(std::move(f)); }

AbelianInvariants brute(const Group& g) { return schur_multiplier_brute(g).invariants; }

// All invariant-factor chains of order n.
// Largest factor first; each later factor divides the one before.
void chains(std::uint64_t n, std::vector<std::uint64_t>& cur, std::vector<AbelianInvariants>& out) {
  if (n == 1) {
    out.push_back(AbelianInvariants::from_cyclic_orders(cur));
    return;
  }
  for (std::uint64_t d = 2; d <= n; ++d) {
    if (n % d || (!cur.empty() && cur.back() % d)) continue;
    cur.push_back(d);
    chains(n / d, cur, out);
    cur.pop_back();
  }
}

std::vector<AbelianInvariants> abelian_upto(std::uint64_t n_max) {
  std::vector<AbelianInvariants> out;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    std::vector<std::uint64_t> cur;
    chains(n, cur, out);
  }
  return out;
}

}  // namespace

TEST(Brute, CyclicGroupsAreTrivial) {
  for (std::uint64_t n = 1; n <= 16; ++n) EXPECT_TRUE(brute(cyclic(n)).is_trivial()) << n;
}

TEST(Brute, SmallGroups) {
  EXPECT_EQ(brute(dihedral8()), inv({2}));
  EXPECT_TRUE(brute(quaternion8()).is_trivial());
  EXPECT_EQ(brute(elementary_abelian(2, 3)), inv({2, 2, 2}));
  EXPECT_EQ(brute(extraspecial(3, 1, Sign::Plus)), inv({3, 3}));
  EXPECT_TRUE(brute(extraspecial(3, 1, Sign::Minus)).is_trivial());
}

TEST(Brute, ExtraspecialOfOrder32) {
  // Elementary abelian of rank 5.
  EXPECT_EQ(brute(extraspecial(2, 2, Sign::Plus)), inv({2, 2, 2, 2, 2}));
  EXPECT_EQ(brute(extraspecial(2, 2, Sign::Minus)), inv({2, 2, 2, 2, 2}));
}

TEST(Brute, MatchesExtraspecialFormula) {
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {2, 2}, {3, 1}})
    for (Sign s : {Sign::Plus, Sign::Minus})
      EXPECT_EQ(brute(extraspecial(p, m, s)).order(), multiplier_extraspecial_order(p, m, s))
          << extraspecial_name(p, m, s);
}

TEST(Brute, FreeRankZeroAndBounds) {
  EXPECT_THROW(schur_multiplier_brute(cyclic(65)), SizeExceeded);
  EXPECT_THROW(schur_multiplier_brute(cyclic(4), kMaxHomologyBound + 1), InvalidArgument);
  BruteStats stats;
  schur_multiplier_brute(dihedral8(), kDefaultHomologyBound, &stats);
  EXPECT_GT(stats.d3.columns, 0u);
}

TEST(Brute, PrunedPlanAgreesWithFullPlan) {
  for (const char* e : {"D8", "Q8", "ElemAb(2,3)", "Cyc(4) x Cyc(2)", "Cyc(3) x Cyc(3)", "Cyc(6) x Cyc(2)",
                        "D8 . Cyc(4)", "ES(3,1,+)", "ES(3,1,-)"}) {
    const Group g = build(*parse_expr(e));
    BruteStats pruned, full;
    const auto a = schur_multiplier_brute(g, 64, &pruned, true).invariants;
    const auto b = schur_multiplier_brute(g, 64, &full, false).invariants;
    EXPECT_EQ(a, b) << e;
    EXPECT_LT(pruned.d3.columns, full.d3.columns) << e;
  }
}

TEST(Brute, PlanIgnoredByDenseRoute) {
  for (const Group& g : {dihedral8(), elementary_abelian(2, 2)}) {
    const BarComplex bar(g);
    const HomologyGroup a = homology_at(bar.d3_matrix(), bar.d2_matrix());
    EXPECT_EQ(a.torsion, brute(g));
  }
}

TEST(Ganea, Examples) {
  const MultiplierOracle oracle;
  EXPECT_EQ(multiplier_ganea(cyclic(2), cyclic(2), oracle).invariants, inv({2}));
  const MultiplierResult r = multiplier_ganea(extraspecial(3, 1, Sign::Plus), cyclic(3), oracle);
  EXPECT_EQ(r.order(), 81u);
  EXPECT_EQ(r.invariants, inv({3, 3, 3, 3}));
  for (const Group& a : {dihedral8(), quaternion8(), extraspecial(3, 1, Sign::Minus)})
    EXPECT_EQ(multiplier_ganea(a, trivial_group(), oracle).invariants, brute(a));
}

TEST(Ganea, AgreesWithBrute) {
  const MultiplierOracle oracle;
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"Cyc(2)", "Cyc(4)"}, {"Cyc(4)", "Cyc(4)"}, {"Cyc(3)", "Cyc(3)"}, {"D8", "Cyc(2)"},
      {"Q8", "Cyc(2)"},     {"D8", "Cyc(3)"},     {"Q8", "Cyc(4)"},     {"D8", "ElemAb(2,2)"}};
  for (auto [x, y] : pairs) {
    const Group a = build(*parse_expr(x)), b = build(*parse_expr(y));
    EXPECT_EQ(multiplier_ganea(a, b, oracle).invariants, brute(direct_product(a, b))) << x << " x " << y;
  }
}

TEST(Abelian, Examples) {
  EXPECT_TRUE(multiplier_abelian(inv({7})).invariants.is_trivial());
  EXPECT_EQ(multiplier_abelian(inv({2, 2, 2})).invariants, inv({2, 2, 2}));
  EXPECT_EQ(multiplier_abelian(inv({2, 4})).invariants, inv({2}));
  EXPECT_EQ(multiplier_abelian(inv({2, 2, 2})).method, MultiplierMethod::AbelianFormula);
}

TEST(Abelian, AgreesWithBruteUpTo64) {
  const auto groups = abelian_upto(64);
  EXPECT_EQ(groups.size(), 117u);
  for (const auto& a : groups)
    EXPECT_EQ(brute(abelian_from_invariants(a)), multiplier_abelian(a).invariants) << a.to_string();
}

TEST(ExtraspecialFormula, Examples) {
  EXPECT_EQ(multiplier_extraspecial_order(3, 1, Sign::Plus), 9u);
  EXPECT_EQ(multiplier_extraspecial_order(5, 1, Sign::Minus), 1u);
  EXPECT_EQ(multiplier_extraspecial_order(2, 2, Sign::Plus), 32u);
  EXPECT_EQ(multiplier_extraspecial_order(2, 2, Sign::Minus), 32u);
  EXPECT_EQ(multiplier_extraspecial_order(2, 1, Sign::Plus), 2u);
  EXPECT_THROW(multiplier_extraspecial_order(4, 1, Sign::Plus), InvalidArgument);
}

TEST(Frattini, BoundOnSmallGroups) {
  const MultiplierOracle oracle;
  for (const char* e : {"D8", "Q8", "D8 x Cyc(2)", "D8 . Cyc(4)", "ES(3,1,+)", "ES(3,1,-)", "ElemAb(2,3)",
                        "Cyc(8) x Cyc(2)", "ES(2,2,+)"}) {
    const FrattiniBound b = check_frattini_bound(build(*parse_expr(e)), oracle);
    EXPECT_TRUE(b.holds) << e << ": " << b.lhs << " > " << b.rhs;
  }
  EXPECT_THROW(check_frattini_bound(cyclic(6), oracle), NotPGroup);
}

TEST(Oracle, CacheIsPure) {
  const MultiplierOracle oracle;
  const Group g = dihedral8();
  const auto a = oracle.multiplier(g);
  EXPECT_EQ(oracle.cache_size(), 1u);
  EXPECT_EQ(oracle.multiplier(g.with_construction("other name")), a);
  EXPECT_EQ(oracle.cache_size(), 1u);
  EXPECT_EQ(a, brute(g));
}

TEST(MultiplierJson, TimingIsOptIn) {
  const MultiplierResult r = schur_multiplier_brute(dihedral8());
  const auto j = to_json(r);
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_EQ(j["order"], 2);
  EXPECT_EQ(j["method"], "brute");
  EXPECT_TRUE(to_json(r, true).contains("elapsed_ms"));
}
