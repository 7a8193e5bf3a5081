#include <gtest/gtest.h>

#include "qdup/json_io.hpp"

using namespace qdup;

TEST(JsonIo, AlgebraRoundTrip) {
  for (const char* name : {"F3", "Q", "F3[t^2=2]", "Q[t^2=-1]"}) {
    Field f = Field::parse(name);
    std::vector<Algebra> algs{matrix_2x2(f), truncated_path(f, round_trip_quiver()),
                              quaternion_algebra(f.from_int(-1), f.from_int(3))};
    if (f.kind() == FieldKind::Rationals)
      algs.push_back(quotient_poly(f.from_rational(Rational(1, 2)), f.from_rational(Rational(-7, 3))));
    if (f.kind() == FieldKind::QuadExt) algs.push_back(quotient_poly(f.generator(), f.one()));
    for (const auto& a : algs) {
      const std::string text = algebra_to_json(a);
      Algebra back = algebra_from_json(text);
      EXPECT_TRUE(back == a) << name;
      EXPECT_EQ(back.labels(), a.labels());
      EXPECT_EQ(algebra_to_json(back), text);
    }
  }
}

TEST(JsonIo, QuiverRoundTrip) {
  FunctionalQuiver q = parse_set_map("1,1,2,4");
  EXPECT_EQ(functional_quiver_from_json(quiver_to_json(q)), q);
  GeneralQuiver g = round_trip_quiver();
  EXPECT_TRUE(general_quiver_from_json(quiver_to_json(g)) == g);
  EXPECT_THROW(general_quiver_from_json(quiver_to_json(q)), Error);
}

TEST(JsonIo, TwistRoundTrip) {
  Field f = Field::prime(3);
  for (const auto& p : brute_force_pairs(power_of_field(f, 2), split_presentation(f))) {
    TwistingPair back = pair_from_json(pair_to_json(p));
    EXPECT_EQ(pair_key(back.f, back.delta), pair_key(p.f, p.delta));
  }
  TauDocument d{dual_presentation(f), dual_presentation(f), brute_force_tau_2x2(dual_presentation(f), dual_presentation(f))};
  const std::string text = taus_to_json(d);
  EXPECT_EQ(taus_to_json(taus_from_json(text)), text);
}

TEST(JsonIo, DuplicatesAndCatalogRoundTrip) {
  Field f = Field::prime(3);
  TwoDim b = split_presentation(f);
  DuplicatesDocument d{f, 2, b, list_duplicates(2, b)};
  const std::string text = duplicates_to_json(d);
  EXPECT_EQ(duplicates_to_json(duplicates_from_json(text)), text);
  EXPECT_EQ(duplicates_from_json(text).entries.size(), 8u);

  const std::string cat = catalog_to_json(catalog4(Field::prime(2)));
  EXPECT_EQ(catalog_to_json(catalog_from_json(cat)), cat);
}

TEST(JsonIo, MalformedInput) {
  EXPECT_THROW(algebra_from_json("{"), Error);
  EXPECT_THROW(algebra_from_json(R"({"schema": "quiver/v1"})"), Error);
  EXPECT_THROW(algebra_from_json(R"({"schema": "algebra/v1", "field": "F3", "dim": 2})"), Error);
  EXPECT_THROW(
      algebra_from_json(R"({"schema": "algebra/v1", "field": "F3", "dim": 1, "labels": ["1"], "unit": ["1"], "table": [[["1", "0"]]]})"),
      Error);
  try {
    algebra_from_json("[]");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}
