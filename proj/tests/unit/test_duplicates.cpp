#include <gtest/gtest.h>

#include <set>

#include "qdup/duplicates.hpp"

using namespace qdup;

namespace {

std::vector<TwoDim> all_presentations(const Field& f) {
  std::vector<TwoDim> out;
  for (const auto& a : f.elements())
    for (const auto& b : f.elements()) out.emplace_back(a, b);
  return out;
}

std::vector<FunctionalQuiver> set_maps(int n) {
  std::vector<FunctionalQuiver> out;
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.emplace_back(t);
    int pos = n - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return out;
  }
}

std::set<std::string> enumerated_keys(int n, const TwoDim& b) {
  std::set<std::string> keys;
  for (const auto& q : set_maps(n))
    for (const auto& c : enumerate_colorations(q, b).colorations) {
      TwistingPair p = pair_from_coloration(c, b);
      keys.insert(pair_key(p.f, p.delta));
    }
  return keys;
}

}  // namespace

TEST(Duplicates, EnumeratorMatchesPairScan) {
  for (const char* name : {"F2", "F3"}) {
    Field f = Field::parse(name);
    for (int n = 1; n <= 2; ++n)
      for (const auto& b : all_presentations(f)) {
        std::set<std::string> brute;
        for (const auto& p : brute_force_pairs(power_of_field(f, static_cast<std::size_t>(n)), b))
          brute.insert(pair_key(p.f, p.delta));
        EXPECT_EQ(enumerated_keys(n, b), brute) << name << " n=" << n << " " << b.to_string();
      }
  }
}

TEST(Duplicates, RulesFindEverySolutionOfTheVertexEquations) {
  // oracle: every color vector with zeros at loop vertices, filtered by the equations
  for (const char* name : {"F2", "F3"}) {
    Field f = Field::parse(name);
    for (const auto& b : all_presentations(f))
      for (int n = 1; n <= 3; ++n)
        for (const auto& q : set_maps(n)) {
          std::set<Vec> scanned;
          const std::uint64_t total = f.order() * f.order() * f.order();
          for (std::uint64_t idx = 0; idx < total; ++idx) {
            Vec a = element_at(f, 3, idx);
            a.resize(static_cast<std::size_t>(n));
            bool normalized = true;
            for (int i = 0; i < n; ++i)
              if (q.is_loop(i) && !a[static_cast<std::size_t>(i)].is_zero()) normalized = false;
            if (normalized && verify_coloration(q, a, b)) scanned.insert(a);
          }
          std::set<Vec> ruled;
          for (const auto& c : enumerate_colorations(q, b).colorations) ruled.insert(c.colors);
          EXPECT_EQ(ruled, scanned) << name << " " << b.to_string() << " map " << q.set_map_string();
        }
  }
}

TEST(Duplicates, CountsForKSquared) {
  EXPECT_EQ(count_twisting_maps(2, split_presentation(Field::prime(3))).count, 8u);
  EXPECT_EQ(count_twisting_maps(2, split_presentation(Field::prime(2))).count, 7u);
  DuplicateCount q = count_twisting_maps(2, split_presentation(Field::rationals()));
  EXPECT_TRUE(q.infinite);
  EXPECT_EQ(q.to_string(), "infinite (1-parameter)");
  EXPECT_THROW(count_twisting_maps(7, split_presentation(Field::prime(2))), Error);
}

TEST(Duplicates, EveryColorationIsCertified) {
  for (const char* name : {"F2", "F3", "F5"}) {
    Field f = Field::parse(name);
    std::vector<TwoDim> bs{split_presentation(f), dual_presentation(f), *field_presentation(f)};
    for (const auto& b : bs)
      for (int n = 1; n <= 3; ++n)
        for (const auto& q : set_maps(n))
          for (const auto& c : enumerate_colorations(q, b).colorations) {
            Certificate cert = certify(q, c.colors, b);
            EXPECT_EQ(cert.model.dim(), static_cast<std::size_t>(2 * n));
            EXPECT_TRUE(cert.label == classify(q, c.colors, b));
          }
  }
}

TEST(Duplicates, ColorationPairRoundTrip) {
  Field f = Field::prime(5);
  TwoDim b = split_presentation(f);
  for (const auto& q : set_maps(3))
    for (const auto& c : enumerate_colorations(q, b).colorations) {
      Coloration back = coloration_from_pair(pair_from_coloration(c, b));
      EXPECT_EQ(back.quiver, q);
      EXPECT_TRUE(equal(back.colors, c.colors));
    }
  TwistingPair bogus{power_of_field(f, 2), b, Matrix::identity(f, 2).scaled(f.from_int(2)), Matrix(f, 2, 2), {}};
  EXPECT_THROW(coloration_from_pair(bogus), Error);
  EXPECT_THROW(pair_from_coloration(Coloration{parse_set_map("2,1"), Vec{f.one(), f.one()}}, b), Error);
}

TEST(Duplicates, StrictThreeCycles) {
  // a double root r of q with 2r = -alpha colors odd cycles; distinct roots never do
  Field f = Field::prime(3);
  for (const auto& b : all_presentations(f))
    if (b.distinct_q_roots().size() == 2)
      EXPECT_TRUE(enumerate_colorations(parse_set_map("2,3,1"), b).colorations.empty()) << b.to_string();
  EXPECT_EQ(enumerate_colorations(parse_set_map("2,3,1"), dual_presentation(f)).colorations.size(), 1u);
}

TEST(Duplicates, DistinctRootLabels) {
  Field f = Field::prime(3);
  TwoDim b = split_presentation(f);  // roots of q: 0 and -1
  // identity: k^3 (x) k^2 = k^6 as the truncated path algebra of six isolated vertices
  auto id = enumerate_colorations(parse_set_map("1,2,3"), b).colorations;
  ASSERT_EQ(id.size(), 1u);
  Label l = classify(parse_set_map("1,2,3"), id[0].colors, b);
  EXPECT_EQ(l.kind(), LabelKind::TruncatedPath);
  EXPECT_EQ(l.quiver().vertex_count(), 6u);
  EXPECT_EQ(l.quiver().arrow_count(), 0u);

  // a strict 2-cycle colored off the roots of q is M2
  Field f5 = Field::prime(5);
  TwoDim b5 = split_presentation(f5);
  FunctionalQuiver swap = parse_set_map("2,1");
  Vec off{f5.from_int(1), -b5.alpha - f5.from_int(1)};
  EXPECT_TRUE(classify(swap, off, b5) == Label::matrix_ring(2));
  Vec on{f5.zero(), -b5.alpha};
  EXPECT_TRUE(classify(swap, on, b5) == Label::truncated_path(round_trip_quiver()));
}

TEST(Duplicates, IrreducibleQGivesFieldFactors) {
  Field f = Field::prime(3);
  TwoDim l = *field_presentation(f);
  auto id = enumerate_colorations(parse_set_map("1,2,3"), l).colorations;
  ASSERT_EQ(id.size(), 1u);
  Label lab = classify(parse_set_map("1,2,3"), id[0].colors, l);
  ASSERT_EQ(lab.kind(), LabelKind::Product);
  EXPECT_EQ(lab.parts().size(), 3u);
  // any tree hanging off a loop needs a root of q
  EXPECT_TRUE(enumerate_colorations(parse_set_map("1,1,3"), l).colorations.empty());
}

TEST(Duplicates, SymbolicFamiliesOverQ) {
  Field q = Field::rationals();
  TwoDim b = split_presentation(q);
  ColorationSet s = enumerate_colorations(parse_set_map("2,1"), b);
  EXPECT_TRUE(s.infinite_family);
  ASSERT_EQ(s.families.size(), 1u);
  for (int t : {-3, 0, 2, 7}) {
    Vec a = s.families[0].instantiate({q.from_int(t)});
    EXPECT_TRUE(verify_coloration(parse_set_map("2,1"), a, b));
    EXPECT_NO_THROW(certify(parse_set_map("2,1"), a, b));
  }
}

TEST(Duplicates, ListingIsDeterministicAcrossJobs) {
  TwoDim b = split_presentation(Field::prime(3));
  auto one = list_duplicates(3, b, 1);
  auto four = list_duplicates(3, b, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].quiver, four[i].quiver);
    EXPECT_EQ(one[i].colors, four[i].colors);
    EXPECT_EQ(one[i].label, four[i].label);
    EXPECT_TRUE(one[i].certified);
  }
}
