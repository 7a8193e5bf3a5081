#include <gtest/gtest.h>

#include <set>

#include "qdup/twist.hpp"

using namespace qdup;

namespace {
std::set<std::string> keys(const std::vector<TwistingPair>& ps) {
  std::set<std::string> s;
  for (const auto& p : ps) s.insert(pair_key(p.f, p.delta));
  return s;
}
}  // namespace

TEST(Twist, PairCountsOverSmallFields) {
  // naive delta scan is the oracle for the derivation-space enumeration
  for (const char* name : {"F2", "F3"}) {
    Field f = Field::parse(name);
    for (std::size_t n = 1; n <= 2; ++n) {
      Algebra a = power_of_field(f, n);
      for (auto b : {split_presentation(f), dual_presentation(f), *field_presentation(f)}) {
        auto fast = brute_force_pairs(a, b);
        auto naive = brute_force_pairs_naive(a, b);
        EXPECT_EQ(keys(fast), keys(naive)) << name << " n=" << n << " " << b.to_string();
      }
    }
  }
  Field f3 = Field::prime(3), f2 = Field::prime(2);
  EXPECT_EQ(brute_force_pairs(power_of_field(f3, 2), split_presentation(f3)).size(), 8u);
  EXPECT_EQ(brute_force_pairs(power_of_field(f2, 2), split_presentation(f2)).size(), 7u);
}

TEST(Twist, EveryPairGivesAnAssociativeProduct) {
  Field f = Field::prime(3);
  Algebra a = power_of_field(f, 2);
  for (const auto& p : brute_force_pairs(a, split_presentation(f))) {
    Algebra t = build_twisted_product(p);
    EXPECT_TRUE(check_algebra(t).ok());
    EXPECT_TRUE(check_morphism(inclusion_left(t, p.A, p.B.algebra())));
    EXPECT_TRUE(check_morphism(inclusion_right(t, p.A, p.B.algebra())));
    // over k^n every derivation is inner
    EXPECT_TRUE(p.theta.has_value());
  }
}

TEST(Twist, InvalidPairIsRejected) {
  Field f = Field::prime(3);
  Algebra a = power_of_field(f, 2);
  Matrix id = Matrix::identity(f, 2);
  Matrix d = id;
  EXPECT_THROW(make_pair(a, dual_presentation(f), id, d), Error);
  auto rep = verify_pair(a, dual_presentation(f), id, d);
  EXPECT_FALSE(rep.leibniz);
  EXPECT_FALSE(rep.failure.empty());
}

TEST(Twist, LeibnizRulesAgreeForIdentityTwist) {
  Field f = Field::prime(2);
  GeneralQuiver q({"u", "v"}, {{"a", 0, 1}});
  Algebra a = truncated_path(f, q);
  Matrix id = Matrix::identity(f, 3);
  auto left = derivation_basis(a, id, LeibnizRule::Left);
  auto right = derivation_basis(a, id, LeibnizRule::Right);
  // with f = id both rules describe ordinary derivations
  EXPECT_EQ(left.size(), right.size());
}

TEST(Twist, Tau2x2DualTimesDualCounts) {
  std::vector<std::pair<const char*, std::size_t>> expected{{"F2", 3}, {"F3", 5}, {"F5", 9}};
  for (auto [name, count] : expected) {
    Field f = Field::parse(name);
    auto d = dual_presentation(f);
    EXPECT_EQ(brute_force_tau_2x2(d, d).size(), count) << name;
  }
}

TEST(Twist, EndoLift) {
  Field f = Field::prime(3);
  Algebra a = power_of_field(f, 2);
  Matrix swap = Matrix::from_rows(f, {Vec{f.zero(), f.one()}, Vec{f.one(), f.zero()}});
  for (const auto& p : brute_force_pairs(a, split_presentation(f))) {
    bool commutes = check_endo_lift(p, swap);
    EXPECT_EQ(check_morphism(lift_endo(p, swap)), commutes);
  }
  Matrix bad = Matrix::from_rows(f, {Vec{f.one(), f.one()}, Vec{f.zero(), f.zero()}});
  auto p = brute_force_pairs(a, split_presentation(f)).front();
  EXPECT_THROW(check_endo_lift(p, bad), Error);
}

TEST(Twist, InvolutionLiftCriterionMatchesDirectCheck) {
  Field f = Field::prime(3);
  Algebra a = power_of_field(f, 2);
  Matrix swap = Matrix::from_rows(f, {Vec{f.zero(), f.one()}, Vec{f.one(), f.zero()}});
  Matrix id = Matrix::identity(f, 2);
  for (auto b : {split_presentation(f), dual_presentation(f), *field_presentation(f)})
    for (const auto& p : brute_force_pairs(a, b))
      for (const auto& star : {id, swap}) {
        Matrix j = involution_lift(p, star);
        bool direct = j * j == Matrix::identity(f, 4);
        EXPECT_EQ(check_involution_lift(p, star), direct);
      }
}

TEST(Twist, FactorizeMatricesByConjugation) {
  Field f = Field::prime(3);
  Algebra m = matrix_2x2(f);
  TwoDim l(f.zero(), f.one());  // x^2 + 1, irreducible over F3
  Vec iota{f.zero(), -f.one(), f.one(), f.zero()};
  Matrix sigma = Matrix::identity(f, 4);
  sigma(1, 1) = -f.one();
  sigma(2, 2) = -f.one();
  auto fac = factorize_by_conjugation(m, l, iota, sigma);
  EXPECT_EQ(fac.A.dim(), 2u);
  EXPECT_TRUE(is_commutative(fac.A));
  EXPECT_TRUE(check_morphism(fac.phi));
  EXPECT_TRUE(is_bijective(fac.phi));
  Matrix bad = Matrix::identity(f, 4);
  EXPECT_THROW(factorize_by_conjugation(m, l, iota, bad), Error);
}
