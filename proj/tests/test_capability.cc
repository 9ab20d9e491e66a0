#include <gtest/gtest.h>

#include <numeric>

#include "pgcl/capability.h"
#include "pgcl/errors.h"
#include "pgcl/expr.h"

using namespace pgcl;

namespace {

Group g_of(const char* e) { return build(*parse_expr(e)); }

Elem central_involution(const Group& g) {
  for (Elem x = 0; x < g.order(); ++x)
    if (x != g.identity() && is_central_element(g, x) && element_order(g, x) == 2) return x;
  throw std::logic_error("none");
}

}  // namespace

TEST(EpicenterContains, Examples) {
  const MultiplierOracle oracle;
  const Group q8 = quaternion8();
  const EpicenterTest id = epicenter_contains(q8, q8.identity(), oracle);
  EXPECT_TRUE(id.in_epicenter);
  EXPECT_EQ(id.orders.m_q, id.orders.m_g);

  const EpicenterTest z = epicenter_contains(q8, central_involution(q8), oracle);
  EXPECT_TRUE(z.in_epicenter);
  EXPECT_EQ(z.orders.m_g, 1u);
  EXPECT_EQ(z.orders.m_q, 2u);
  EXPECT_EQ(z.orders.n_cap_derived, 2u);
  EXPECT_EQ(z.orders.ker_alpha, 1u);

  const Group h = extraspecial(3, 1, Sign::Plus);
  for (Elem x = 0; x < h.order(); ++x) {
    if (x == h.identity() || !is_central_element(h, x)) continue;
    const EpicenterTest t = epicenter_contains(h, x, oracle);
    EXPECT_FALSE(t.in_epicenter);
    EXPECT_EQ(t.orders.m_g, 9u);
    EXPECT_EQ(t.orders.m_q, 3u);
    EXPECT_EQ(t.orders.ker_alpha, 9u);
  }
}

TEST(EpicenterContains, NonCentralRejectedWithoutHomology) {
  const MultiplierOracle oracle;
  const Group d8 = dihedral8();
  Elem x = 0;
  while (is_central_element(d8, x)) ++x;
  const EpicenterTest t = epicenter_contains(d8, x, oracle);
  EXPECT_FALSE(t.in_epicenter);
  EXPECT_FALSE(t.tested);
  EXPECT_EQ(oracle.cache_size(), 0u);
}

TEST(EpicenterContains, SameCyclicSubgroupSameAnswer) {
  const MultiplierOracle oracle;
  for (const char* e : {"Cyc(8)", "D8 . Cyc(4)", "ES(3,1,-)", "Q8 x Cyc(2)", "Cyc(9) x Cyc(3)"}) {
    const Group g = g_of(e);
    for (Elem x = 0; x < g.order(); ++x) {
      if (!is_central_element(g, x)) continue;
      const std::uint64_t o = element_order(g, x);
      for (std::uint64_t k = 2; k < o; ++k)
        if (std::gcd(k, o) == 1)
          ASSERT_EQ(epicenter_contains(g, x, oracle).in_epicenter,
                    epicenter_contains(g, power(g, x, k), oracle).in_epicenter)
              << e;
    }
  }
}

TEST(Epicenter, Examples) {
  const MultiplierOracle oracle;
  EXPECT_TRUE(epicenter(dihedral8(), oracle).is_trivial());
  const Group q8 = quaternion8();
  EXPECT_EQ(epicenter(q8, oracle), center(q8));
  for (std::uint64_t p : {2u, 3u, 5u}) EXPECT_EQ(epicenter(cyclic(p), oracle).order(), p);
}

TEST(Epicenter, InsideCenterAndKernelOrders) {
  const MultiplierOracle oracle;
  for (const char* e : {"D8", "Q8", "D8 x Cyc(2)", "Q8 x Cyc(2)", "D8 . Cyc(4)", "ES(3,1,+)", "ES(3,1,-)",
                        "ElemAb(2,3)", "Cyc(4) x Cyc(2)", "ES(2,2,+)", "Cyc(6)"}) {
    const Group g = g_of(e);
    std::vector<EpicenterEvidence> ev;
    const Subgroup z = epicenter(g, oracle, {}, &ev);
    const Subgroup c = center(g);
    for (Elem x : z.elements()) EXPECT_TRUE(c.contains(x)) << e;
    for (const auto& v : ev) {
      const auto& h = v.orders;
      EXPECT_GE(h.ker_alpha, 1u) << e;
      EXPECT_EQ(h.m_g * h.n_cap_derived, h.ker_alpha * h.m_q) << e;
      EXPECT_EQ(v.in_epicenter, h.ker_alpha == 1) << e;
    }
  }
}

TEST(Capable, Examples) {
  const MultiplierOracle oracle;
  EXPECT_TRUE(is_capable(trivial_group(), oracle).capable);
  EXPECT_TRUE(is_capable(extraspecial(3, 1, Sign::Plus), oracle).capable);
  EXPECT_FALSE(is_capable(extraspecial(2, 2, Sign::Plus), oracle).capable);
  EXPECT_TRUE(is_capable(dihedral8(), oracle).capable);
  EXPECT_FALSE(is_capable(quaternion8(), oracle).capable);
  EXPECT_FALSE(is_capable(cyclic(4), oracle).capable);
  EXPECT_TRUE(is_capable(elementary_abelian(2, 2), oracle).capable);
}

TEST(Capable, StrictModeAgrees) {
  const MultiplierOracle oracle;
  for (const char* e : {"D8", "Q8", "D8 x Cyc(2)", "D8 . Cyc(4)", "ES(3,1,+)", "ES(3,1,-)"}) {
    const Group g = g_of(e);
    const CapabilityReport a = is_capable(g, oracle), b = is_capable(g, oracle, {.strict = true});
    EXPECT_EQ(a.epicenter, b.epicenter) << e;
    EXPECT_TRUE(b.strict);
    EXPECT_EQ(b.evidence.size(), g.order());
    for (const auto& v : b.evidence) EXPECT_GE(v.orders.ker_alpha, 1u) << e;
  }
}

TEST(Capable, InjectivityAloneIsNotMembership) {
  // M(Q8) = 1, so every quotient map is injective on multipliers; the
  // non-central cyclic subgroups of order 4 still lie outside Z*(Q8).
  const MultiplierOracle oracle;
  const Group q8 = quaternion8();
  for (Elem x = 0; x < q8.order(); ++x) {
    if (is_central_element(q8, x)) continue;
    const EpicenterTest t = epicenter_contains(q8, x, oracle, {.strict = true});
    EXPECT_TRUE(t.tested);
    EXPECT_EQ(t.orders.ker_alpha, 1u);
    EXPECT_GT(t.orders.n_comm, 1u);
    EXPECT_FALSE(t.in_epicenter);
  }
}

TEST(Capable, Json) {
  const MultiplierOracle oracle;
  const auto j = to_json(is_capable(quaternion8(), oracle));
  EXPECT_EQ(j["capable"], false);
  EXPECT_EQ(j["epicenter_order"], 2);
  ASSERT_FALSE(j["evidence"].empty());
  for (const char* k : {"element_label", "m_g", "m_q", "n_cap_derived", "ker_alpha", "in_epicenter"})
    EXPECT_TRUE(j["evidence"][0].contains(k)) << k;
}

TEST(EpicenterLemma, Examples) {
  const MultiplierOracle oracle;
  const Group q8 = quaternion8();
  const EpicenterLemmaResult a = epicenter_lemma_check(q8, center(q8), oracle);
  EXPECT_TRUE(a.hypothesis);
  EXPECT_TRUE(a.conclusion);
  EXPECT_TRUE(a.confirmed());

  const Group h = extraspecial(3, 1, Sign::Plus);
  const EpicenterLemmaResult b = epicenter_lemma_check(h, derived_subgroup(h), oracle);
  EXPECT_FALSE(b.hypothesis);
  EXPECT_TRUE(b.confirmed());

  const Group g = central_product_canonical(dihedral8(), cyclic(4));
  const EpicenterLemmaResult c = epicenter_lemma_check(g, derived_subgroup(g), oracle);
  EXPECT_TRUE(c.hypothesis);
  EXPECT_TRUE(c.conclusion);
}

TEST(EpicenterLemma, Preconditions) {
  const MultiplierOracle oracle;
  const Group c4 = cyclic(4);
  EXPECT_THROW(epicenter_lemma_check(c4, center(c4), oracle), PreconditionViolated);
  const Group d8 = dihedral8();
  EXPECT_THROW(epicenter_lemma_check(d8, trivial_subgroup(d8), oracle), PreconditionViolated);
  const Group c6 = cyclic(6);
  EXPECT_THROW(epicenter_lemma_check(c6, trivial_subgroup(c6), oracle), PreconditionViolated);
}
