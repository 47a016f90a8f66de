#include "repdyn/exact.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <tuple>

using namespace repdyn;

TEST(Rational, NormalizesSignAndGcd) {
  const Rational q = Rational::normalize(Integer(6), Integer(-4));
  EXPECT_EQ(q.str(), "-3/2");
  EXPECT_EQ(q.num(), -3);
  EXPECT_EQ(q.den(), 2);
  EXPECT_EQ(Rational(10, 5), Rational(2));
  EXPECT_THROW(Rational::normalize(Integer(1), Integer(0)), std::domain_error);
}

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse(" -1/4 "), Rational(-1, 4));
  EXPECT_EQ(Rational::parse("+6/8"), Rational(3, 4));
  EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("2/0"), std::domain_error);
}

TEST(Rational, FieldArithmetic) {
  const Rational a(3, 7), b(-5, 11);
  EXPECT_EQ(a + b, Rational(3 * 11 - 5 * 7, 77));
  EXPECT_EQ(a * b, Rational(-15, 77));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_LT(b, a);
  EXPECT_EQ(pow(Rational(-2, 3), 3), Rational(-8, 27));
}

TEST(Rational, HeightAndSquareRoots) {
  EXPECT_EQ(height(Rational(-7, 3)).value, 7);
  EXPECT_EQ(height(Rational(2, 9)).value, 9);
  ASSERT_TRUE(sqrt_exact(Rational(49, 4)).has_value());
  EXPECT_EQ(*sqrt_exact(Rational(49, 4)), Rational(7, 2));
  EXPECT_FALSE(sqrt_exact(Rational(2)).has_value());
  EXPECT_FALSE(sqrt_exact(Rational(-4)).has_value());
  EXPECT_EQ(*sqrt_exact(Rational(0)), Rational(0));
}

TEST(NumberTheory, TotientAndMoebiusAgreeWithDefinitions) {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    std::uint64_t coprime = 0;
    for (std::uint64_t k = 1; k <= n; ++k) coprime += std::gcd(k, n) == 1;
    EXPECT_EQ(euler_phi(n), coprime) << n;
    // mu(n): 0 if a square divides n, else (-1)^(number of prime factors).
    int mu = 1;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p <= m; ++p) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e > 1) mu = 0;
      if (e == 1) mu = -mu;
    }
    EXPECT_EQ(moebius(n), mu) << n;
  }
  EXPECT_EQ(valuation(Integer(3 * 3 * 3 * 5), 3), 3);
}

TEST(HeightGrid, MatchesBruteForceEnumeration) {
  for (long H : {1L, 2L, 7L, 12L}) {
    std::vector<std::tuple<long, long, long>> expect;  // (height, b, a)
    for (long b = 1; b <= H; ++b)
      for (long a = -H; a <= H; ++a)
        if (a != 0 && std::gcd(std::labs(a), b) == 1) expect.emplace_back(std::max(std::labs(a), b), b, a);
    std::sort(expect.begin(), expect.end());
    const auto grid = height_grid(H);
    ASSERT_EQ(grid.size(), expect.size()) << H;
    for (std::size_t i = 0; i < grid.size(); ++i)
      EXPECT_EQ(grid[i], Rational(std::get<2>(expect[i]), std::get<1>(expect[i])));
  }
  const auto ints = height_grid(3, true);
  EXPECT_EQ(ints, (std::vector<Rational>{-1, 1, -2, 2, -3, 3}));
  EXPECT_THROW(height_grid(0), std::invalid_argument);
}
