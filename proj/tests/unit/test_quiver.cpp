#include <gtest/gtest.h>

#include <set>

#include "qdup/quiver.hpp"

using namespace qdup;

TEST(Quiver, ParseSetMap) {
  auto q = parse_set_map("2,1,1");
  EXPECT_EQ(q.targets(), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(parse_set_map("{2,1,1}"), q);
  EXPECT_EQ(q.set_map_string(), "2,1,1");
  EXPECT_THROW(parse_set_map("1,4"), Error);
  EXPECT_THROW(parse_set_map("1,x"), Error);
}

TEST(Quiver, EndomorphismMatrixColumnsArePreimageSums) {
  Field f = Field::prime(3);
  auto q = parse_set_map("2,2,1");
  Matrix m = endomorphism_matrix(q, f);
  // f(e1) = e3, f(e2) = e1 + e2, f(e3) = 0
  EXPECT_EQ(m.column(0), (Vec{f.zero(), f.zero(), f.one()}));
  EXPECT_EQ(m.column(1), (Vec{f.one(), f.one(), f.zero()}));
  EXPECT_TRUE(is_zero(m.column(2)));
}

TEST(Quiver, Components) {
  // 1 -> 2 -> 3 -> 2, 4 -> 4, 5 -> 4
  auto q = parse_set_map("2,3,2,4,4");
  auto cs = components(q);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].vertices, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(cs[0].cycle, (std::vector<int>{1, 2}));
  EXPECT_FALSE(cs[0].strict);
  EXPECT_EQ(cs[0].depth.at(0), 1);
  EXPECT_EQ(cs[1].cycle, (std::vector<int>{3}));
  EXPECT_EQ(cs[1].loop_vertex, 3);
  EXPECT_FALSE(cs[1].strict);
}

TEST(Quiver, CanonicalFormIsRelabelingInvariant) {
  GeneralQuiver a({"u", "v", "w"}, {{"a", 0, 1}, {"b", 1, 2}});
  GeneralQuiver b({"x", "y", "z"}, {{"p", 2, 0}, {"q", 1, 2}});
  EXPECT_TRUE(a.isomorphic(b));
  GeneralQuiver c({"x", "y", "z"}, {{"p", 0, 1}, {"q", 2, 1}});
  EXPECT_FALSE(a.isomorphic(c));
  EXPECT_THROW(GeneralQuiver({"x"}, {{"p", 0, 1}}), Error);
}

TEST(Quiver, ShapeClassCounts) {
  // independent count: group set maps by canonical form of the quiver
  for (int n = 1; n <= 4; ++n) {
    std::set<std::string> forms;
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(n);
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      forms.insert(FunctionalQuiver(t).to_general().canonical_form());
      for (int pos = n - 1; pos >= 0; --pos) {
        if (++t[static_cast<std::size_t>(pos)] < n) break;
        t[static_cast<std::size_t>(pos)] = 0;
      }
    }
    auto classes = shape_classes(n);
    EXPECT_EQ(classes.size(), forms.size()) << n;
    std::size_t sum = 0;
    for (const auto& c : classes) sum += c.size;
    EXPECT_EQ(sum, total);
  }
  EXPECT_EQ(shape_classes(2).size(), 3u);
  EXPECT_EQ(shape_classes(3).size(), 7u);
}

TEST(Quiver, CibilsTransform) {
  Field f = Field::prime(5);
  // 2 -> 1 (loop at 1), 3 -> 1; colors: 2 gets r1, 3 gets r2
  auto q = parse_set_map("1,1,1");
  auto c = components(q).at(0);
  std::vector<Scalar> colors{f.zero(), f.from_int(1), f.from_int(3)};
  auto g = cibils_transform(q, c, colors, f.from_int(1), f.from_int(3));
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.arrow_count(), 2u);
  EXPECT_TRUE(g.is_forest());
  std::vector<Scalar> bad{f.zero(), f.from_int(2), f.from_int(3)};
  EXPECT_THROW(cibils_transform(q, c, bad, f.from_int(1), f.from_int(3)), Error);
  EXPECT_THROW(cibils_transform(parse_set_map("2,1"), components(parse_set_map("2,1")).at(0), colors,
                                f.from_int(1), f.from_int(3)),
               Error);
}
