#include <gtest/gtest.h>

#include <set>

#include "pgcl/classifier.h"
#include "pgcl/errors.h"
#include "pgcl/expr.h"
#include "pgcl/group.h"
#include "pgcl/isomorphism.h"
#include "pgcl/serialize.h"

using namespace pgcl;

namespace {

std::vector<Group> corpus() {
  return {trivial_group(),
          cyclic(2),
          cyclic(6),
          cyclic(8),
          elementary_abelian(2, 3),
          abelian_from_invariants(AbelianInvariants::from_cyclic_orders({2, 4})),
          dihedral8(),
          quaternion8(),
          extraspecial(3, 1, Sign::Plus),
          extraspecial(3, 1, Sign::Minus),
          extraspecial(2, 2, Sign::Plus),
          extraspecial(2, 2, Sign::Minus),
          direct_product(dihedral8(), cyclic(2)),
          central_product_canonical(dihedral8(), cyclic(4)),
          central_product_canonical(extraspecial(3, 1, Sign::Plus), cyclic(9))};
}

// Latin square, identity, inverses and associativity straight from the table.
void expect_group_axioms(const Group& g) {
  const std::size_t n = g.order();
  for (Elem a = 0; a < n; ++a) {
    std::set<Elem> row, col;
    for (Elem b = 0; b < n; ++b) {
      row.insert(g.mul(a, b));
      col.insert(g.mul(b, a));
    }
    ASSERT_EQ(row.size(), n);
    ASSERT_EQ(col.size(), n);
    ASSERT_EQ(g.mul(a, g.identity()), a);
    ASSERT_EQ(g.mul(a, g.inv(a)), g.identity());
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
}

Elem derived_generator(const Group& g) {
  const Subgroup d = derived_subgroup(g);
  for (Elem x : d.elements())
    if (x != g.identity()) return x;
  throw std::logic_error("trivial derived subgroup");
}

}  // namespace

TEST(Cyclic, Basics) {
  EXPECT_EQ(cyclic(1).order(), 1u);
  const Group c6 = cyclic(6);
  EXPECT_TRUE(c6.is_abelian());
  EXPECT_EQ(abelian_invariants(c6), AbelianInvariants::from_chain({6}));
  const Group c4 = cyclic(4);
  EXPECT_EQ(exponent(c4), 4u);
  std::size_t involutions = 0;
  for (Elem x = 0; x < 4; ++x) involutions += element_order(c4, x) == 2;
  EXPECT_EQ(involutions, 1u);
}

TEST(DirectProduct, Examples) {
  const Group g = extraspecial(3, 1, Sign::Plus);
  EXPECT_TRUE(is_isomorphic(direct_product(cyclic(1), g), g).isomorphic);
  EXPECT_EQ(abelian_invariants(direct_product(cyclic(2), cyclic(2))), AbelianInvariants::from_chain({2, 2}));
  const Group d = direct_product(g, cyclic(3));
  EXPECT_EQ(d.order(), 81u);
  EXPECT_EQ(derived_subgroup(d).order(), 3u);
  EXPECT_EQ(abelian_invariants(subgroup_as_group(center(d))), AbelianInvariants::from_chain({3, 3}));
}

TEST(DirectProduct, CenterIsProductOfCenters) {
  const Group a = dihedral8(), b = quaternion8();
  EXPECT_EQ(center(direct_product(a, b)).order(), center(a).order() * center(b).order());
}

TEST(DirectProduct, SizeExceeded) {
  EXPECT_THROW(direct_product(extraspecial(2, 2, Sign::Plus), extraspecial(2, 2, Sign::Plus)), SizeExceeded);
}

TEST(Extraspecial, Examples) {
  const Group h = extraspecial(3, 1, Sign::Plus);
  EXPECT_EQ(h.order(), 27u);
  EXPECT_EQ(exponent(h), 3u);
  for (Elem x = 0; x < h.order(); ++x)
    if (x != h.identity()) EXPECT_EQ(element_order(h, x), 3u);
  EXPECT_EQ(exponent(extraspecial(3, 1, Sign::Minus)), 9u);
  EXPECT_TRUE(is_isomorphic(extraspecial(2, 1, Sign::Plus), dihedral8()).isomorphic);
  const Group e = extraspecial(2, 2, Sign::Minus);
  EXPECT_EQ(e.order(), 32u);
  EXPECT_EQ(center(e).order(), 2u);
  EXPECT_EQ(derived_subgroup(e).order(), 2u);
}

TEST(Extraspecial, Structure) {
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}})
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      SCOPED_TRACE(extraspecial_name(p, m, s));
      const Group g = extraspecial(p, m, s);
      EXPECT_EQ(g.order(), ipow(p, 2 * m + 1));
      EXPECT_EQ(center(g), derived_subgroup(g));
      EXPECT_EQ(center(g).order(), p);
      EXPECT_EQ(abelianization_invariants(g), AbelianInvariants::from_cyclic_orders(std::vector<std::uint64_t>(2 * m, p)));
    }
  EXPECT_EQ(exponent(extraspecial(5, 1, Sign::Plus)), 5u);
  EXPECT_EQ(exponent(extraspecial(5, 1, Sign::Minus)), 25u);
}

TEST(CentralProduct, Examples) {
  const Group d8 = dihedral8();
  EXPECT_EQ(central_product_canonical(d8, cyclic(2)).order(), 8u);
  EXPECT_TRUE(is_isomorphic(central_product_canonical(d8, cyclic(2)), d8).isomorphic);
  const Group g = central_product_canonical(d8, cyclic(4));
  EXPECT_EQ(g.order(), 16u);
  EXPECT_EQ(abelian_invariants(subgroup_as_group(center(g))), AbelianInvariants::from_chain({4}));
  EXPECT_EQ(derived_subgroup(g).order(), 2u);
}

TEST(CentralProduct, OfTwoExtraspecials) {
  const Group h = extraspecial(3, 1, Sign::Plus);
  const Elem z = derived_generator(h);
  const Group g = central_product(h, h, {{z, z}}, 256);
  EXPECT_EQ(g.order(), 243u);
  const IsomorphismResult r = compare_groups(g, extraspecial(3, 2, Sign::Plus, 256));
  EXPECT_TRUE(r.isomorphic);
  EXPECT_TRUE(r.fingerprint_only);
}

TEST(CentralProduct, BadIdentification) {
  const Group d8 = dihedral8(), c4 = cyclic(4);
  Elem noncentral = 0;
  while (is_central_element(d8, noncentral)) ++noncentral;
  Elem gen4 = 0;
  while (element_order(c4, gen4) != 4) ++gen4;
  Elem inv2 = 0;
  while (element_order(c4, inv2) != 2) ++inv2;
  EXPECT_THROW(central_product(d8, c4, {{noncentral, inv2}}), IdentNotCentral);
  const Elem z = derived_generator(d8);
  EXPECT_THROW(central_product(d8, c4, {{z, gen4}}), IdentNotIsomorphism);
}

TEST(CentralProduct, OrderFormula) {
  const Group g = central_product_canonical(extraspecial(3, 1, Sign::Minus), cyclic(9));
  EXPECT_EQ(g.order(), 27u * 9 / 3);
  EXPECT_TRUE(is_central(g, center(g)));
}

TEST(Subgroups, Examples) {
  EXPECT_EQ(center(cyclic(8)).order(), 8u);
  EXPECT_EQ(derived_subgroup(quaternion8()).order(), 2u);
  const Group h = extraspecial(3, 1, Sign::Plus);
  EXPECT_EQ(frattini(h), derived_subgroup(h));
  EXPECT_THROW(frattini(cyclic(6)), NotPGroup);
  EXPECT_TRUE(subgroup_generated(h, {}).is_trivial());
  EXPECT_THROW(Subgroup(cyclic(4), {0, 1}), NotASubgroup);
}

TEST(Quotient, Examples) {
  const Group q8 = quaternion8();
  EXPECT_EQ(abelian_invariants(quotient(q8, center(q8)).group), AbelianInvariants::from_chain({2, 2}));
  EXPECT_TRUE(is_isomorphic(quotient(q8, trivial_subgroup(q8)).group, q8).isomorphic);
  const Group c4 = cyclic(4);
  Elem x = 0;
  while (element_order(c4, x) != 2) ++x;
  EXPECT_TRUE(is_isomorphic(quotient(c4, subgroup_generated(c4, {x})).group, cyclic(2)).isomorphic);
}

TEST(Quotient, NotNormal) {
  const Group d8 = dihedral8();
  Elem r = 0;
  while (element_order(d8, r) != 2 || is_central_element(d8, r)) ++r;
  EXPECT_THROW(quotient(d8, subgroup_generated(d8, {r})), NotNormal);
}

TEST(Quotient, ProjectionIsHomomorphism) {
  for (const Group& g : corpus()) {
    if (g.order() > 128) continue;
    const Quotient q = quotient(g, center(g));
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b)
        ASSERT_EQ(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
  }
}

TEST(AbelianInvariants, Examples) {
  EXPECT_EQ(abelian_invariants(cyclic(12)), AbelianInvariants::from_chain({12}));
  EXPECT_EQ(abelian_invariants(direct_product(cyclic(2), cyclic(4))), AbelianInvariants::from_chain({2, 4}));
  const Group g = direct_product(extraspecial(2, 2, Sign::Plus), cyclic(4));
  EXPECT_EQ(abelian_invariants(subgroup_as_group(center(g))), AbelianInvariants::from_chain({2, 4}));
  EXPECT_THROW(abelian_invariants(dihedral8()), NotAbelian);
}

TEST(AbelianInvariants, ChainAndOrder) {
  for (const Group& g : corpus()) {
    const AbelianInvariants z = abelian_invariants(subgroup_as_group(center(g)));
    const auto& f = z.factors();
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0u);
    EXPECT_EQ(z.order(), center(g).order());
  }
  EXPECT_EQ(AbelianInvariants::from_cyclic_orders({6, 4, 1}), AbelianInvariants::from_chain({2, 12}));
  EXPECT_THROW(AbelianInvariants::from_chain({4, 2}), InvalidArgument);
}

TEST(GroupAxioms, Corpus) {
  for (const Group& g : corpus()) {
    SCOPED_TRACE(g.construction());
    expect_group_axioms(g);
  }
}

TEST(GroupAxioms, RejectsBadTables) {
  EXPECT_THROW(Group::from_table(2, {0, 1, 1, 1}), InvalidGroup);
  EXPECT_THROW(Group::from_table(3, {0, 1}), InvalidGroup);
  // Latin square with identity 0 that is not associative.
  const std::vector<Elem> loop = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  EXPECT_THROW(Group::from_table(5, loop), InvalidGroup);
  EXPECT_THROW(cyclic(kExtendedMaxOrder + 1, kExtendedMaxOrder + 1), SizeExceeded);
}

TEST(Isomorphism, Examples) {
  EXPECT_FALSE(is_isomorphic(dihedral8(), quaternion8()).isomorphic);
  const Group h = extraspecial(2, 2, Sign::Plus);
  const IsomorphismResult self = is_isomorphic(h, h);
  ASSERT_TRUE(self.isomorphic);
  ASSERT_TRUE(self.witness);
  EXPECT_TRUE(is_isomorphism(h, h, *self.witness));
  const Group dd = build(*parse_expr("D8"));
  const Elem zd = derived_generator(dd);
  const Group q = quaternion8();
  const Elem zq = derived_generator(q);
  const Group a = central_product(dd, dd, {{zd, zd}});
  const Group b = central_product(q, q, {{zq, zq}});
  const IsomorphismResult r = is_isomorphic(a, b);
  ASSERT_TRUE(r.isomorphic);
  EXPECT_TRUE(is_isomorphism(a, b, *r.witness));
  EXPECT_FALSE(is_isomorphic(a, extraspecial(2, 2, Sign::Minus)).isomorphic);
}

TEST(Isomorphism, ReflexiveAndSymmetric) {
  const auto c = corpus();
  for (const Group& a : c) {
    if (a.order() > kIsomorphismBudget) continue;
    EXPECT_TRUE(is_isomorphic(a, a).isomorphic) << a.construction();
    for (const Group& b : c) {
      if (b.order() > kIsomorphismBudget) continue;
      EXPECT_EQ(is_isomorphic(a, b).isomorphic, is_isomorphic(b, a).isomorphic)
          << a.construction() << " vs " << b.construction();
    }
  }
}

TEST(Isomorphism, RelabelledTable) {
  const Group g = central_product_canonical(dihedral8(), cyclic(4));
  const std::size_t n = g.order();
  std::vector<Elem> perm(n);
  for (Elem i = 0; i < n; ++i) perm[i] = static_cast<Elem>((i * 5 + 3) % n);
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[perm[a] * n + perm[b]] = perm[g.mul(a, b)];
  const Group h = Group::from_table(n, table);
  const IsomorphismResult r = is_isomorphic(g, h);
  ASSERT_TRUE(r.isomorphic);
  EXPECT_TRUE(is_isomorphism(g, h, *r.witness));
}

TEST(Isomorphism, Budget) {
  const Group g = direct_product(extraspecial(3, 1, Sign::Plus), cyclic(3));
  EXPECT_THROW(is_isomorphic(g, g), SizeExceeded);
  EXPECT_TRUE(compare_groups(g, g).fingerprint_only);
}

TEST(Serialize, RoundTrip) {
  for (const Group& g : corpus()) {
    const Group back = group_from_json(group_to_json(g));
    EXPECT_EQ(back.table_key(), g.table_key());
    EXPECT_EQ(back.construction(), g.construction());
    EXPECT_EQ(back.labels(), g.labels());
    EXPECT_EQ(group_to_json(back), group_to_json(g));
  }
}

TEST(Serialize, Errors) {
  nlohmann::json j = group_to_json(cyclic(3));
  j["schema"] = "pgcl/0";
  EXPECT_THROW(group_from_json(j), SchemaError);
  j = group_to_json(cyclic(3));
  j["table"][0] = 2;
  EXPECT_THROW(group_from_json(j), InvalidGroup);
  EXPECT_THROW(group_from_json(nlohmann::json::object()), SchemaError);
}
