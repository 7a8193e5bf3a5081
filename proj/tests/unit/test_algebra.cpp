#include <gtest/gtest.h>

#include "qdup/algebra.hpp"

using namespace qdup;

TEST(Algebra, ConstructorsAreUnitalAssociative) {
  for (const char* name : {"F2", "F3", "Q", "F3[t^2=2]"}) {
    Field f = Field::parse(name);
    EXPECT_TRUE(check_algebra(power_of_field(f, 3)).ok()) << name;
    EXPECT_TRUE(check_algebra(matrix_2x2(f)).ok()) << name;
    EXPECT_TRUE(check_algebra(quotient_poly(f.from_int(1), f.from_int(1))).ok()) << name;
    EXPECT_TRUE(check_algebra(quaternion_algebra(f.from_int(1), f.from_int(-1))).ok()) << name;
    GeneralQuiver q({"u", "v", "w"}, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 2}});
    EXPECT_TRUE(check_algebra(truncated_path(f, q)).ok()) << name;
    GeneralQuiver a2({"u", "v", "w"}, {{"a", 0, 1}, {"b", 1, 2}});
    Algebra pa = path_algebra(f, a2);
    EXPECT_EQ(pa.dim(), 6u);
    EXPECT_TRUE(check_algebra(pa).ok()) << name;
    EXPECT_TRUE(check_algebra(tensor_product(matrix_2x2(f), quotient_poly(f.zero(), f.zero()))).ok());
    EXPECT_TRUE(check_algebra(opposite(truncated_path(f, q))).ok());
  }
}

TEST(Algebra, CheckAlgebraDetectsNonAssociativity) {
  Field f = Field::prime(3);
  // x*x = 1 + x with x*1 = x but 1*x = 0 breaks the unit
  std::vector<Vec> t{Vec{f.one(), f.zero()}, Vec{f.zero(), f.one()}, Vec{f.zero(), f.zero()}, Vec{f.one(), f.one()}};
  Algebra bad(f, 2, t, Vec{f.one(), f.zero()});
  EXPECT_FALSE(check_algebra(bad).ok());
}

TEST(Algebra, MorphismCheck) {
  Field f = Field::prime(5);
  Algebra k2 = power_of_field(f, 2);
  Matrix swap = Matrix::from_rows(f, {Vec{f.zero(), f.one()}, Vec{f.one(), f.zero()}});
  EXPECT_TRUE(check_morphism(LinearMap{k2, k2, swap}));
  Matrix bad = Matrix::from_rows(f, {Vec{f.one(), f.one()}, Vec{f.zero(), f.zero()}});
  EXPECT_FALSE(check_morphism(LinearMap{k2, k2, bad}));
  auto fixed = fixed_subalgebra(k2, swap);
  EXPECT_EQ(fixed.algebra.dim(), 1u);
}

TEST(Algebra, FingerprintCountsIdempotents) {
  Field f = Field::prime(3);
  auto fp = fingerprint(power_of_field(f, 3));
  ASSERT_TRUE(fp.idempotents);
  EXPECT_EQ(*fp.idempotents, 8u);
  auto m2 = fingerprint(matrix_2x2(f));
  EXPECT_EQ(m2.center_dim, 1u);
  // GL2(F3) has 48 elements
  ASSERT_TRUE(m2.unit_group);
  EXPECT_EQ(*m2.unit_group, 48u);
  EXPECT_TRUE(is_simple(matrix_2x2(f)));
  EXPECT_FALSE(is_simple(power_of_field(f, 2)));
}

TEST(Algebra, FingerprintCountsOfMatrixRings) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    auto fp = fingerprint(matrix_2x2(Field::prime(static_cast<std::int64_t>(p))));
    EXPECT_EQ(*fp.unit_group, (p * p - 1) * (p * p - p)) << p;
    EXPECT_EQ(*fp.idempotents, p * p + p + 2) << p;  // 0, 1 and the rank-one projections
    EXPECT_EQ(*fp.square_zero, p * p) << p;
  }
  // the extension-field scan agrees with the closed forms too
  auto f9 = fingerprint(matrix_2x2(Field::parse("F3[t^2=2]")));
  EXPECT_EQ(*f9.unit_group, 80u * 72u);
  EXPECT_EQ(*f9.idempotents, 81u + 9u + 2u);
  EXPECT_EQ(*f9.square_zero, 81u);
}

TEST(Algebra, IsoSearchStrategiesAgree) {
  Field f = Field::prime(3);
  Algebra split_quat = quaternion_algebra(f.one(), f.one());
  for (auto s : {IsoStrategy::FingerprintFirst, IsoStrategy::Generators}) {
    auto r = iso_search(split_quat, matrix_2x2(f), s);
    ASSERT_EQ(r.outcome, IsoOutcome::Iso);
    EXPECT_TRUE(check_morphism(*r.map));
    EXPECT_TRUE(is_bijective(*r.map));
  }
  auto ex = iso_search(power_of_field(f, 2), quotient_poly(f.one(), f.zero()), IsoStrategy::Exhaustive);
  EXPECT_EQ(ex.outcome, IsoOutcome::Iso);
  auto d = iso_search(power_of_field(f, 2), quotient_poly(f.zero(), f.zero()));
  EXPECT_EQ(d.outcome, IsoOutcome::ProvedDistinct);
  auto e = iso_search(power_of_field(f, 2), quotient_poly(f.zero(), f.zero()), IsoStrategy::Exhaustive);
  EXPECT_EQ(e.outcome, IsoOutcome::NoneFound);
  EXPECT_TRUE(e.complete);
}

TEST(Algebra, RestrictAndExtendScalars) {
  Field e = Field::parse("F3[t^2=2]");
  Algebra m = matrix_2x2(e);
  Algebra r = restrict_scalars(m);
  EXPECT_EQ(r.dim(), 8u);
  EXPECT_EQ(r.field(), e.base());
  EXPECT_TRUE(check_algebra(r).ok());
  Algebra back = scalar_extension(matrix_2x2(Field::prime(3)), e);
  EXPECT_TRUE(iso_search(back, m).outcome == IsoOutcome::Iso);
}

TEST(Algebra, SubalgebraOnRejectsNonClosedSpan) {
  Field f = Field::prime(3);
  Algebra m = matrix_2x2(f);
  EXPECT_THROW(subalgebra_on(m, {m.unit(), m.basis(1), m.basis(2)}), Error);
  EXPECT_EQ(subalgebra_on(m, {m.unit(), m.basis(1)}).algebra.dim(), 2u);
  auto s = subalgebra_on(m, {m.basis(0), m.basis(3)});
  EXPECT_EQ(s.algebra.dim(), 2u);
}
