#include "repdyn/upoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace repdyn;

namespace {

UPoly from_roots(const std::vector<Rational>& roots) {
  UPoly p = UPoly::constant(1);
  for (const auto& r : roots) p = p * UPoly{-r, Rational(1)};
  return p;
}

}  // namespace

TEST(UPoly, DivisionIdentity) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> a, b;
    for (int i = 0; i < 7; ++i) a.emplace_back(coef(rng), 1 + (trial % 3));
    for (int i = 0; i < 3; ++i) b.emplace_back(coef(rng));
    b.emplace_back(1 + trial % 4);
    const UPoly A(a), B(b);
    const auto [q, r] = divmod(A, B);
    EXPECT_EQ(q * B + r, A);
    EXPECT_LT(r.degree(), B.degree());
  }
}

TEST(UPoly, GcdOfProducts) {
  const UPoly common = UPoly::from_high({3, 0, 1});  // 3y^2 + 1
  const UPoly a = common * UPoly::from_high({1, -2}), b = common * UPoly::from_high({2, 5, 1});
  EXPECT_EQ(gcd(a, b), common.monic());
  EXPECT_TRUE(is_squarefree(a));
  EXPECT_FALSE(is_squarefree(a * UPoly::from_high({1, -2})));
  EXPECT_EQ(squarefree_part(a * a).monic(), a.monic());
}

TEST(UPoly, SturmCountsMatchSignChangesOnAFineGrid) {
  const UPoly p = from_roots({Rational(-3), Rational(1, 2), Rational(5, 3), Rational(4)}) * UPoly::from_high({1, 0, 2});
  const SturmChain s(p);
  EXPECT_EQ(s.count(Rational(-10), Rational(10)), 4);
  EXPECT_EQ(s.count(Rational(0), Rational(2)), 2);
  EXPECT_EQ(s.count(Rational(1, 2), Rational(1)), 0);  // half-open at the left end
  const auto iv = isolate_real_roots(p, Rational(1, 1000));
  ASSERT_EQ(iv.size(), 4u);
  for (const auto& [lo, hi] : iv) {
    EXPECT_LE(hi - lo, Rational(1, 1000));
    EXPECT_LE(p(lo).sign() * p(hi).sign(), 0);
  }
}

TEST(RationalRoots, RecoversPlantedRoots) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 25);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> roots;
    const int k = 1 + trial % 4;
    for (int i = 0; i < k; ++i) roots.emplace_back(num(rng), den(rng));
    // An irreducible cofactor with no real roots keeps the problem honest.
    UPoly p = Rational(trial + 1, 3) * (from_roots(roots) * UPoly::from_high({7, 3, 5}));
    std::vector<Rational> expect = roots;
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    EXPECT_EQ(rational_roots(p), expect) << p.str();
  }
}

TEST(RationalRoots, HandlesHugeDenominatorsAndRootlessInput) {
  const Rational r(123456789, 987654321);
  const UPoly p = from_roots({r, Rational(-1, 3)}) * UPoly::from_high({1, 0, 0, 0, -2});
  EXPECT_EQ(rational_roots(p), (std::vector<Rational>{Rational(-1, 3), r}));
  EXPECT_TRUE(rational_roots(UPoly::from_high({1, 0, -2})).empty());
  EXPECT_EQ(rational_roots(UPoly::from_high({1, 0, 0})), std::vector<Rational>{Rational(0)});
}

TEST(QuarticShape, ClassifiesConstructedProducts) {
  const UPoly q1 = UPoly::from_high({1, 0, 2}), q2 = UPoly::from_high({1, 1, 5});
  const UPoly l1 = UPoly::from_high({1, -1}), l2 = UPoly::from_high({2, 3}), l3 = UPoly::from_high({1, 7}),
              l4 = UPoly::from_high({5, -2});
  EXPECT_EQ(quartic_factor_shape(q1 * q2).shape.str(), "(2,2)");
  EXPECT_EQ(quartic_factor_shape(l1 * l2 * q1).shape.str(), "(1,1,2)");
  EXPECT_EQ(quartic_factor_shape(l1 * l2 * l3 * l4).shape.str(), "(1,1,1,1)");
  EXPECT_EQ(quartic_factor_shape(l1 * UPoly::from_high({1, 0, 0, 2})).shape.str(), "(1,3)");
  EXPECT_EQ(quartic_factor_shape(UPoly::from_high({1, 0, 0, 0, 2})).shape.str(), "(4)");
  // x^4 + 1 is irreducible over Q but splits mod every prime.
  EXPECT_EQ(quartic_factor_shape(UPoly::from_high({1, 0, 0, 0, 1})).shape.str(), "(4)");
  // Biquadratic split with k = 0.
  EXPECT_EQ(quartic_factor_shape(UPoly::from_high({1, 0, 5, 0, 6})).shape.str(), "(2,2)");
  const auto split = quartic_factor_shape(Rational(3) * (q1 * q2));
  UPoly prod = UPoly::constant(1);
  for (const auto& f : split.factors) prod = prod * f;
  EXPECT_EQ(prod, (q1 * q2).monic());
  EXPECT_THROW(quartic_factor_shape(l1 * l1 * q1), std::invalid_argument);
  EXPECT_THROW(quartic_factor_shape(q1), std::invalid_argument);
}

TEST(UPoly, ComposeAffineAndPrinting) {
  const UPoly p = UPoly::from_high({1, -3, 2});
  EXPECT_EQ(p.compose_affine(Rational(2), Rational(1)), UPoly::from_high({4, -2, 0}));
  EXPECT_EQ(p.str('y'), "y^2 - 3*y + 2");
  EXPECT_EQ(p.derivative(), UPoly::from_high({2, -3}));
}
