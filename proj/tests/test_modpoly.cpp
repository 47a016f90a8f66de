#include "repdyn/classify.hpp"
#include "repdyn/modpoly.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace repdyn;

TEST(Phi, PeriodTwoLeftPolynomialIsExact) {
  EXPECT_EQ(phi(TypeWord::parse("LL"), Side::L), MPoly::parse("c^2*x^2 + c*x + c*d*y^2 + 1"));
}

TEST(Phi, FixedPointPolynomial) {
  // Self-loops: C x^2 + D y^2 - x.
  EXPECT_EQ(phi(TypeWord::parse("L"), Side::L), MPoly::parse("c*x^2 + d*y^2 - x"));
}

TEST(Phi, RightPolynomialVanishesForAllLeftWords) {
  for (int N = 1; N <= 5; ++N) EXPECT_TRUE(phi(TypeWord::power(Side::L, N), Side::R).is_zero()) << N;
}

TEST(Phi, MoebiusProductOverDivisors) {
  // The product of Phi_{L^d, L} over d | N is the raw difference pi_L(f_{L^N}) - x,
  // which is built here by direct iteration of x -> c x^2 + d y^2.
  for (int N = 1; N <= 5; ++N) {
    MPoly iter = var(Var::x);
    for (int k = 0; k < N; ++k) iter = var(Var::c) * iter * iter + var(Var::d) * var(Var::y) * var(Var::y);
    MPoly prod(1);
    for (int d = 1; d <= N; ++d)
      if (N % d == 0) prod *= phi(TypeWord::power(Side::L, d), Side::L);
    EXPECT_EQ(prod, iter - var(Var::x)) << N;
    EXPECT_EQ(phi_moebius_leftpower(N, N), phi(TypeWord::power(Side::L, N), Side::L)) << N;
  }
}

TEST(Phi, DegreeTableReproduced) {
  const std::map<std::string, std::pair<int, int>> expect{
      {"L", {2, 0}},       {"LL", {2, 0}},      {"LR", {2, 4}},      {"LLL", {6, 0}},     {"LLR", {2, 8}},
      {"LLLL", {12, 0}},   {"LLLR", {6, 16}},   {"LLRR", {2, 8}},    {"LRLR", {8, 16}},   {"LLLLL", {30, 0}},
      {"LLLLR", {12, 32}}, {"LLLRR", {6, 16}},  {"LLRLR", {16, 32}}};
  const auto rows = degree_table(5);
  ASSERT_EQ(rows.size(), expect.size());
  for (const auto& r : rows) {
    const auto it = expect.find(r.type.str());
    ASSERT_NE(it, expect.end()) << r.type.str();
    EXPECT_EQ(std::make_pair(r.degL, r.degR), it->second) << r.type.str();
    EXPECT_EQ(r.univariate, is_univariate(r.type).has_value()) << r.type.str();
  }
}

TEST(Phi, PeriodicVectorsAreZeros) {
  // (x, y) = (0, 1) on C = 1, D = -1 has type (L,L).
  EXPECT_TRUE(specialize_phi(TypeWord::parse("LL"), Side::L, 1, -1)
                  .evaluate({{Var::x, Rational(0)}, {Var::y, Rational(1)}})
                  .is_zero());
  // The 3-cycle through x = -7/4 at y = 1 on CD = -29/16.
  const MPoly p3 = specialize_phi(TypeWord::parse("LLL"), Side::L, 1, Rational(-29, 16));
  for (const Rational& x : {Rational(-7, 4), Rational(5, 4), Rational(-1, 4)})
    EXPECT_TRUE(p3.evaluate({{Var::x, x}, {Var::y, Rational(1)}}).is_zero()) << x;
  // Both LRLR witnesses at (1, 6) are common zeros of Phi_L and Phi_R.
  const TypeWord t = TypeWord::parse("LRLR");
  const MPoly pl = specialize_phi(t, Side::L, 1, 6), pr = specialize_phi(t, Side::R, 1, 6);
  for (const auto& w : lrlr_vectors(1, 6)) {
    EXPECT_TRUE(nf_eval_bivariate(pl, w.vector.x, w.vector.y).is_zero());
    EXPECT_TRUE(nf_eval_bivariate(pr, w.vector.x, w.vector.y).is_zero());
  }
}

TEST(Phi, RejectsWordsBeyondTheSymbolicLimit) {
  EXPECT_THROW(phi(TypeWord::power(Side::L, 7), Side::L), std::invalid_argument);
}
