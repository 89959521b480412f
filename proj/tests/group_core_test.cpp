#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "amalgams/automorphism.hpp"
#include "amalgams/subgroup_ops.hpp"
#include "support/brute.hpp"
#include "support/small_groups.hpp"

using namespace amalgams;
using namespace amalgams::testing;

namespace {

GroupPtr s4() { return generate_group(4, {cycles(4, {{0, 1}}), cycles(4, {{0, 1, 2, 3}})}); }
GroupPtr z2xz4() { return generate_group(6, {cycles(6, {{0, 1}}), cycles(6, {{2, 3, 4, 5}})}); }

std::size_t brute_aut_order(const GroupPtr& g) { return brute_automorphisms(g).size(); }

}  // namespace

TEST(Perm, ProductIsComposition) {
  const Perm p = cycles(3, {{0, 1}});
  const Perm q = cycles(3, {{1, 2}});
  const Perm pq = p * q;
  for (Point i = 0; i < 3; ++i) EXPECT_EQ(pq[i], p[q[i]]);
  EXPECT_EQ(p * p.inverse(), Perm::identity(3));
}

TEST(Perm, RejectsNonBijection) {
  EXPECT_THROW(Perm(std::vector<Point>{0, 0, 1}), Error);
  EXPECT_THROW(Perm(std::vector<Point>{0, 3, 1}), Error);
}

TEST(FiniteGroup, NamedOrders) {
  EXPECT_EQ(trivial_group()->order(), 1u);
  EXPECT_EQ(cyclic(16)->order(), 16u);
  EXPECT_EQ(klein4()->order(), 4u);
  EXPECT_EQ(s3()->order(), 6u);
  EXPECT_EQ(d8()->order(), 8u);
  EXPECT_EQ(q8()->order(), 8u);
  EXPECT_EQ(s4()->order(), 24u);
  EXPECT_FALSE(q8()->is_abelian());
  EXPECT_TRUE(z2xz4()->is_abelian());
}

TEST(FiniteGroup, EnumerationInvariants) {
  for (const auto& g : {cyclic(7), s3(), d8(), q8(), s4(), z2xz4()}) {
    EXPECT_EQ(g->element(0), Perm::identity(g->degree()));
    std::set<Perm> distinct(g->elements().begin(), g->elements().end());
    EXPECT_EQ(distinct.size(), g->order());
    for (Elem k = 1; k < g->order(); ++k) {
      EXPECT_EQ(g->element(k), g->element(g->parent(k)) * g->generators()[g->via(k)]);
    }
    for (Elem a = 0; a < g->order(); ++a) {
      EXPECT_EQ(g->mul(a, g->inv(a)), 0u);
      for (Elem b = 0; b < g->order(); ++b) {
        EXPECT_EQ(g->element(g->mul(a, b)), g->element(a) * g->element(b));
      }
    }
  }
}

TEST(FiniteGroup, Errors) {
  try {
    generate_group(3, {cycles(4, {{0, 1}})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
  }
  try {
    generate_group(4, {cycles(4, {{0, 1}}), cycles(4, {{0, 1, 2, 3}})}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(GroupMap, SignOfS3) {
  const auto g = s3();
  const auto z2 = cyclic(2);
  const auto sign = hom(g, z2, {cycles(2, {{0, 1}}), Perm::identity(2)});
  EXPECT_EQ(kernel(sign).order(), 3u);
  EXPECT_EQ(image(sign).order(), 2u);
  EXPECT_TRUE(sign.surjective());
  EXPECT_FALSE(sign.injective());
}

TEST(GroupMap, RejectsNonHomomorphism) {
  try {
    hom(cyclic(3), s3(), {cycles(3, {{0, 1}})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAHomomorphism);
  }
}

TEST(Automorphisms, OrdersMatchBruteForce) {
  for (const auto& g : {klein4(), cyclic(4), s3(), d8(), q8(), z2xz4(), cyclic(8), cyclic(6)}) {
    EXPECT_EQ(automorphism_group(g).order(), brute_aut_order(g)) << "order " << g->order();
  }
}

TEST(Automorphisms, CyclicUnits) {
  for (std::size_t n = 1; n <= 16; ++n) {
    std::size_t units = 0;
    for (std::size_t k = 1; k <= n; ++k) units += std::gcd(k, n) == 1;
    EXPECT_EQ(automorphism_group(cyclic(n)).order(), units) << "Z" << n;
  }
}

TEST(Automorphisms, EveryCarrierElementIsAnAutomorphism) {
  const auto aut = automorphism_group(q8());
  for (Elem a = 0; a < aut.order(); ++a) EXPECT_TRUE(aut.automorphism(a).bijective());
}

TEST(Automorphisms, RelativeStabilizer) {
  // automorphisms of D8 leaving a Klein four-subgroup invariant
  const auto g = d8();
  const Subgroup v(g, closure(g, {idx(g, cycles(4, {{0, 2}, {1, 3}})), idx(g, cycles(4, {{1, 3}}))}));
  ASSERT_EQ(v.order(), 4u);
  const auto full = automorphism_group(g);
  std::size_t expected = 0;
  for (Elem a = 0; a < full.order(); ++a) {
    bool keeps = true;
    for (Elem x : v.members()) keeps = keeps && v.contains(full.apply(a, x));
    expected += keeps;
  }
  EXPECT_EQ(relative_automorphism_group(full, {v}).order(), expected);
  EXPECT_EQ(expected, 4u);
}

TEST(Automorphisms, RestrictionRejectsNonInvariant) {
  const auto g = klein4();
  const auto z2 = cyclic(2);
  const auto iota = hom(z2, g, {cycles(4, {{0, 1}, {2, 3}})});
  const auto full = automorphism_group(g);
  bool threw = false;
  for (Elem a = 0; a < full.order(); ++a) {
    try {
      restrict_aut(full.automorphism(a), image(iota), iota);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotInvariant);
      threw = true;
    }
  }
  EXPECT_TRUE(threw);
}

TEST(DoubleCosets, MatchOrbitCount) {
  std::mt19937_64 rng(7);
  const auto g = s4();
  const Elem n = static_cast<Elem>(g->order());
  for (int trial = 0; trial < 40; ++trial) {
    const Subgroup h(g, closure(g, {static_cast<Elem>(rng() % n)}));
    const Subgroup k(g, closure(g, {static_cast<Elem>(rng() % n), static_cast<Elem>(rng() % n)}));
    // union-find over x ~ h x k
    std::vector<Elem> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Elem x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    for (Elem x = 0; x < n; ++x) {
      for (Elem a : h.members()) {
        for (Elem b : k.members()) {
          Elem y = *g->index_of(g->element(a) * g->element(x) * g->element(b));
          Elem rx = find(x), ry = find(y);
          if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
        }
      }
    }
    std::set<Elem> roots;
    for (Elem x = 0; x < n; ++x) roots.insert(find(x));
    const auto dcs = double_cosets(g, h, k);
    ASSERT_EQ(dcs.size(), roots.size());
    std::size_t total = 0;
    for (const auto& dc : dcs) {
      total += dc.members.size();
      EXPECT_EQ(dc.representative, dc.members.front());
      EXPECT_EQ(find(dc.representative), dc.representative);
    }
    EXPECT_EQ(total, g->order());
  }
}

TEST(Complements, ExistenceMatchesSubgroupEnumeration) {
  for (const auto& g : {s4(), d8(), q8(), z2xz4(), cyclic(8), s3()}) {
    const auto subs = two_generated_subgroups(g);
    for (const auto& members : subs) {
      const Subgroup n(g, members);
      if (!is_normal(n)) continue;
      bool exists = false;
      for (const auto& t : subs) {
        if (t.size() * members.size() != g->order()) continue;
        std::vector<Elem> meet;
        std::set_intersection(t.begin(), t.end(), members.begin(), members.end(), std::back_inserter(meet));
        exists = exists || meet.size() == 1;
      }
      const auto found = complement_of_normal(n);
      EXPECT_EQ(found.has_value(), exists) << "|G| = " << g->order() << ", |N| = " << n.order();
      if (found) {
        EXPECT_EQ(found->order() * n.order(), g->order());
        EXPECT_EQ(intersect(*found, n).order(), 1u);
      }
    }
  }
}

TEST(Complements, CommonComplementOfTwoKernels) {
  // V4 = {1, a, b, ab}: <a> and <b> share the complement <ab>
  const auto g = klein4();
  const Elem a = idx(g, cycles(4, {{0, 1}, {2, 3}}));
  const Elem b = idx(g, cycles(4, {{0, 2}, {1, 3}}));
  const Subgroup na(g, closure(g, {a}));
  const Subgroup nb(g, closure(g, {b}));
  const auto t = common_complement({na, nb});
  ASSERT_TRUE(t);
  EXPECT_EQ(t->members(), closure(g, {g->mul(a, b)}));
  // Z4 has no complement to its subgroup of order 2
  const auto z4 = cyclic(4);
  EXPECT_FALSE(complement_of_normal(Subgroup(z4, closure(z4, {2}))));
}

TEST(Complements, RejectsNonNormal) {
  const auto g = s3();
  try {
    complement_of_normal(Subgroup(g, closure(g, {idx(g, cycles(3, {{0, 1}}))})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNormal);
  }
}
