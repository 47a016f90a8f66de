#include "repdyn/numberfield.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace repdyn;

namespace {

const UPoly kMinus7 = UPoly::from_high({1, 0, 7});  // y^2 + 7

}  // namespace

TEST(NumberField, ArithmeticInQuadraticField) {
  const auto K = NFModulus::make(kMinus7);
  const NFElem r = NFElem::generator(K);
  EXPECT_EQ(r * r, NFElem(K, Rational(-7)));
  // (a + b r)(a - b r) = a^2 + 7 b^2.
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> e(-30, 30);
  for (int t = 0; t < 50; ++t) {
    const Rational a(e(rng), 1 + t % 5), b(e(rng), 1 + t % 3);
    const NFElem z = NFElem(K, a) + b * r, zbar = NFElem(K, a) - b * r;
    EXPECT_EQ(z * zbar, NFElem(K, a * a + Rational(7) * b * b));
    if (!z.is_zero()) {
      EXPECT_EQ(z * z.inverse(), NFElem(K, Rational(1)));
      // Conjugate over norm is the inverse.
      EXPECT_EQ(z.inverse(), (Rational(1) / (a * a + Rational(7) * b * b)) * zbar);
    }
  }
}

TEST(NumberField, SmallExamples) {
  const auto gi = NFModulus::make(UPoly::from_high({1, 0, 1}));
  const NFElem i = NFElem::generator(gi);
  EXPECT_EQ(i * i, NFElem(gi, Rational(-1)));
  EXPECT_EQ(i.inverse(), -i);
  const auto w = NFModulus::make(UPoly::from_high({2, 1, 1}));
  EXPECT_EQ(NFElem(w, Rational(2)).inverse(), NFElem(w, Rational(1, 2)));
  const auto s2 = NFModulus::make(UPoly::from_high({1, 0, -2}));
  const NFElem r = NFElem::generator(s2);
  EXPECT_EQ((NFElem(s2, Rational(1)) + r) * (NFElem(s2, Rational(1)) - r), NFElem(s2, Rational(-1)));
}

TEST(NumberField, ReducibleModulusRaisesZeroDivisorWithFactor) {
  const auto m = NFModulus::make(UPoly::from_high({1, 0, -1}));
  const NFElem y = NFElem::generator(m);
  try {
    (void)(y + Rational(-1)).inverse();
    FAIL() << "expected ZeroDivisor";
  } catch (const ZeroDivisor& z) {
    EXPECT_EQ(z.factor(), UPoly::from_high({1, -1}));
    const auto [a, b] = split_modulus(*m, z.factor());
    EXPECT_EQ(a->monic(), UPoly::from_high({1, -1}));
    EXPECT_EQ(b->monic(), UPoly::from_high({1, 1}));
  }
  EXPECT_THROW(NFModulus::make(UPoly::from_high({1, 2, 1})), std::invalid_argument);
  EXPECT_THROW(NFModulus::make(UPoly::constant(3)), std::invalid_argument);
}

TEST(NumberField, EvaluationAndRootImages) {
  const auto m = NFModulus::make(UPoly::from_high({1, -3, 2}));  // roots 1 and 2
  const NFElem y = NFElem::generator(m);
  const NFElem e = y * y + Rational(5) * y;
  EXPECT_EQ(e.at_root(Rational(1)), Rational(6));
  EXPECT_EQ(e.at_root(Rational(2)), Rational(14));
  EXPECT_THROW((void)e.at_root(Rational(3)), std::invalid_argument);
  const auto K = NFModulus::make(kMinus7);
  const NFElem r = NFElem::generator(K);
  const MPoly p = MPoly::parse("x^2 + 3*x*y - y^2 + 1");
  // x = r, y = 2: -7 + 6r - 4 + 1.
  EXPECT_EQ(nf_eval_bivariate(p, r, NFElem(K, Rational(2))), NFElem(K, Rational(-10)) + Rational(6) * r);
}

TEST(NumberField, MixingModuliIsRejected) {
  const NFElem a = NFElem::generator(NFModulus::make(kMinus7));
  const NFElem b = NFElem::generator(NFModulus::make(UPoly::from_high({1, 0, 1})));
  EXPECT_THROW((void)(a + b), std::invalid_argument);
}
