#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "amalgams/classify.hpp"
#include "amalgams/goldschmidt.hpp"
#include "amalgams/triangle.hpp"
#include "support/corpus.hpp"

using namespace amalgams;
using namespace amalgams::testing;

namespace {

std::vector<std::string> stems_where(bool (*pred)(const InstanceFile&)) {
  std::vector<std::string> out;
  for (const auto& s : corpus_stems()) {
    if (pred(corpus_instance(s))) out.push_back(s);
  }
  return out;
}

// Orbits of H_0 x H_1 x H_2 through the full relation on every pair of
// tuples, merged with union-find.
std::size_t orbit_count_by_relation(const TriangleInstance& t) {
  const auto n = t.size();
  std::vector<std::uint64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint64_t k = 0; k < n; ++k) {
    const auto tuple = t.decode(k);
    for (const auto& x0 : t.h[0]) {
      for (const auto& x1 : t.h[1]) {
        for (const auto& x2 : t.h[2]) {
          const auto r = find(t.encode(t.relate(tuple, {x0, x1, x2})));
          const auto l = find(k);
          if (r != l) parent[std::max(r, l)] = std::min(r, l);
        }
      }
    }
  }
  std::set<std::uint64_t> roots;
  for (std::uint64_t k = 0; k < n; ++k) roots.insert(find(k));
  return roots.size();
}

}  // namespace

TEST(Goldschmidt, V4InD8HasTwoClasses) {
  const auto f = corpus_instance("double_loop_v4_d8");
  ASSERT_TRUE(f.goldschmidt);
  const auto& g = *f.goldschmidt;
  EXPECT_EQ(g.aut_b.order(), 6u);
  EXPECT_EQ(g.abar1.order(), 2u);
  EXPECT_EQ(g.abar2.order(), 2u);
  EXPECT_EQ(goldschmidt_classes(g).size(), 2u);
}

TEST(Goldschmidt, DoubleCosetsMatchClassify) {
  const auto stems = stems_where([](const InstanceFile& f) { return f.is_double_loop(); });
  ASSERT_GE(stems.size(), 5u);
  for (const auto& stem : stems) {
    const auto f = corpus_instance(stem);
    const auto& g = *f.goldschmidt;
    const auto c = reference_graph(*f.type);
    const auto classes = goldschmidt_classes(g);
    const auto report = classify(c);
    EXPECT_EQ(classes.size(), report.class_count()) << stem;
    std::size_t total = 0;
    for (const auto& cls : classes) total += cls.size;
    EXPECT_EQ(total, g.aut_b.order());
    // double coset representatives are pairwise non-isomorphic pointings
    const PointingDecider decider(c);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      for (std::size_t j = 0; j < classes.size(); ++j) {
        const bool iso = decider
                             .isomorphic(goldschmidt_pointing(g, c, classes[i].representative),
                                         goldschmidt_pointing(g, c, classes[j].representative))
                             .has_value();
        EXPECT_EQ(iso, i == j) << stem;
      }
    }
  }
}

TEST(Goldschmidt, AmalgamKeepsFirstInclusion) {
  const auto f = corpus_instance("double_loop_v4_d8");
  const auto& g = *f.goldschmidt;
  const auto c = reference_graph(*f.type);
  for (Elem d = 0; d < g.aut_b.order(); ++d) {
    const auto a = goldschmidt_amalgam(g, *f.type, c, d);
    EXPECT_EQ(a.inclusion(0), g.psi1);
    EXPECT_EQ(a.inclusion(1), g.psi1);
    EXPECT_EQ(image(a.inclusion(2)), image(g.psi2));
    EXPECT_EQ(a.inclusion(2) == g.psi2, d == 0);
  }
}

TEST(Goldschmidt, RejectsNonInjective) {
  const auto b = cyclic(2);
  const auto t = trivial_group();
  try {
    make_goldschmidt(b, t, t, trivial_map(b, t), trivial_map(b, t));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInjective);
  }
}

TEST(Triangle, OrbitsMatchFullRelation) {
  const auto stems = stems_where([](const InstanceFile& f) { return f.is_triangle(); });
  ASSERT_GE(stems.size(), 4u);
  for (const auto& stem : stems) {
    const auto f = corpus_instance(stem);
    const auto c = reference_graph(*f.type);
    const auto t = make_triangle(c);
    const auto orbits = triangle_orbits(t);
    EXPECT_EQ(orbits.classes.size(), orbit_count_by_relation(t)) << stem;
    std::uint64_t total = 0;
    for (const auto& cls : orbits.classes) {
      total += cls.size;
      EXPECT_EQ(orbits.class_of[t.encode(cls.representative)], static_cast<std::uint32_t>(&cls - orbits.classes.data()));
    }
    EXPECT_EQ(total, t.size());
  }
}

TEST(Triangle, XiRoundTrip) {
  for (const auto& stem : {"triangle_z3_s3", "triangle_z2_v4", "triangle_v4_d8", "triangle_z4_q8"}) {
    const auto f = corpus_instance(stem);
    const auto c = reference_graph(*f.type);
    const auto t = make_triangle(c);
    const PointingDecider decider(c);
    for (std::uint64_t k = 0; k < t.size(); ++k) {
      const auto tuple = t.decode(k);
      const auto p = xi_inverse(t, tuple);
      EXPECT_EQ(xi_map(t, p), tuple);
      EXPECT_TRUE(decider.isomorphic(xi_inverse(t, xi_map(t, p)), p).has_value());
    }
  }
}

TEST(Triangle, OrbitsAreIsomorphismClasses) {
  for (const auto& stem : {"triangle_z3_s3", "triangle_z2_v4", "triangle_z4_q8"}) {
    const auto f = corpus_instance(stem);
    const auto c = reference_graph(*f.type);
    const auto t = make_triangle(c);
    const auto orbits = triangle_orbits(t);
    const PointingDecider decider(c);
    for (std::uint64_t i = 0; i < t.size(); ++i) {
      for (std::uint64_t j = 0; j < t.size(); ++j) {
        const bool iso = decider.isomorphic(xi_inverse(t, t.decode(i)), xi_inverse(t, t.decode(j))).has_value();
        EXPECT_EQ(iso, orbits.class_of[i] == orbits.class_of[j]) << stem;
      }
    }
  }
}

TEST(Triangle, ShapeAndBudget) {
  const auto f = corpus_instance("path_z2_v4");
  const auto c = reference_graph(*f.type);
  EXPECT_THROW(make_triangle(c), Error);
  const auto tf = corpus_instance("triangle_v4_d8");
  const auto tc = reference_graph(*tf.type);
  try {
    triangle_orbits(make_triangle(tc), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}
