#include "repdyn/classify.hpp"
#include "repdyn/quartic.hpp"

#include <gtest/gtest.h>

using namespace repdyn;

namespace {

using Outcome = LocalVerdict::Outcome;

long legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

/// Hilbert symbol (a, b)_p for odd p, from the valuations and unit parts.
int hilbert(long a, long b, long p) {
  int alpha = 0, beta = 0;
  while (a % p == 0) a /= p, ++alpha;
  while (b % p == 0) b /= p, ++beta;
  const long eps = ((p - 1) / 2) % 2;
  long s = (alpha * beta * eps) % 2 ? -1 : 1;
  if (beta % 2) s *= legendre(a, p);
  if (alpha % 2) s *= legendre(b, p);
  return static_cast<int>(s);
}

/// Depressed coefficients read off R(t - a3/(4 a4)) / a4 directly.
DepressedQuartic depressed_by_shift(const UPoly& R) {
  const UPoly m = R.monic();
  const UPoly s = m.compose_affine(Rational(1), -m.coeff(3) / Rational(4));
  EXPECT_TRUE(s.coeff(3).is_zero());
  return {s.coeff(2), s.coeff(1), s.coeff(0)};
}

}  // namespace

TEST(Depressed, IdentityAndClosedForms) {
  EXPECT_TRUE(depressed_identity_holds());
  const auto g = depressed_generic();
  const auto& r = depressed_reduced();
  EXPECT_TRUE(equivalent(g.b2, r.b2));
  EXPECT_TRUE(equivalent(g.b1, r.b1));
  EXPECT_TRUE(equivalent(g.b0, r.b0));
}

TEST(Depressed, SpecializationsMatchDirectShift) {
  for (const auto& [C, D] : std::vector<std::pair<Rational, Rational>>{
           {1, 6}, {Rational(1, 4), Rational(-1, 4)}, {-3, 7}, {Rational(2, 5), Rational(9, 4)}}) {
    const auto want = depressed_by_shift(r_poly(C, D));
    const auto got = depressed_coeffs(C, D), fast = depressed_fast(C, D);
    EXPECT_EQ(got.b2, want.b2);
    EXPECT_EQ(got.b1, want.b1);
    EXPECT_EQ(got.b0, want.b0);
    EXPECT_EQ(fast.b2, want.b2);
    EXPECT_EQ(fast.b1, want.b1);
    EXPECT_EQ(fast.b0, want.b0);
  }
  EXPECT_THROW(depressed_coeffs(1, 1), std::domain_error);
}

TEST(LocalSolvability, ConicsAgreeWithHilbertSymbol) {
  // a x^2 + b y^2 = z^2 has a nontrivial Q_p point iff (a, b)_p = 1.
  const std::vector<std::tuple<long, long, long>> cases{
      {1, 1, 3},   {-1, -1, 3}, {2, 3, 3},   {3, 2, 3},   {3, 3, 3},   {-3, 3, 3},  {5, 3, 3},  {6, 7, 3},
      {3, 5, 5},   {5, 2, 5},   {5, 5, 5},   {10, 5, 5},  {2, 3, 5},   {-5, 1, 5},  {7, 3, 5},  {15, 6, 5},
      {7, 3, 7},   {3, 7, 7},   {7, 7, 7},   {-7, 7, 7},  {14, 5, 7},  {2, 6, 7},   {7, 5, 7},  {21, 5, 7},
      {11, 2, 11}, {11, 11, 11}, {-1, 11, 11}, {13, 5, 13}, {13, 2, 13}, {6, 13, 13}};
  ASSERT_EQ(cases.size(), 30u);
  for (const auto& [a, b, p] : cases) {
    const MPoly conic = MPoly(a) * var(Var::x) * var(Var::x) + MPoly(b) * var(Var::y) * var(Var::y) -
                        var(Var::z) * var(Var::z);
    const auto v = qp_solvable({conic}, static_cast<unsigned long>(p), p > 7 ? 4 : 6);
    const Outcome want = hilbert(a, b, p) == 1 ? Outcome::PointFound : Outcome::NoPoints;
    EXPECT_EQ(v.outcome, want) << a << "x^2 + " << b << "y^2 = z^2 at p = " << p;
  }
}

TEST(LocalSolvability, WitnessesAreResiduesOfTheRightLevel) {
  const auto v = qp_solvable({MPoly::parse("x^2 - 2")}, 7, 6);
  ASSERT_EQ(v.outcome, Outcome::PointFound);
  ASSERT_EQ(v.witness.size(), 1u);
  Integer M = 1;
  for (int k = 0; k < v.witness_level; ++k) M *= 7;
  const Integer r = v.witness[0];
  EXPECT_EQ(((r * r - 2) % M + M) % M, 0);
  EXPECT_EQ(qp_solvable({MPoly::parse("x^2 + y^2 - 3")}, 3, 4).outcome, Outcome::NoPoints);
  EXPECT_EQ(qp_solvable({MPoly::parse("x^2 + y^2 - 2")}, 3, 4).outcome, Outcome::PointFound);
}

TEST(Biquadratic, B2SplitsAndIsLocallyInsolubleAtThree) {
  const auto rep = b2_curve_check();
  EXPECT_TRUE(rep.printed_is_b1_numerator);
  ASSERT_TRUE(rep.factors_found);
  EXPECT_EQ(rep.factors[0] * rep.factors[1], b2_printed());
  EXPECT_EQ(b2_printed(), MPoly::parse("(c^2 - 6*c*d + d^2)*(c^2 + 4*c*d - d^2)"));
  for (const auto& v : rep.verdicts) {
    EXPECT_EQ(v.outcome, Outcome::NoPoints);
    EXPECT_LE(v.levels_explored, 10);
  }
}

TEST(Resolvent, RootsAtOneSixAndVieta) {
  const auto b = depressed_coeffs(1, 6);
  const Resolvent r = resolvent_from(b);
  EXPECT_EQ(r.T.degree(), 3);
  EXPECT_EQ(r.T.lead(), Rational(2));
  const auto iv = isolate_real_roots(r.T, Rational::normalize(Integer(1), Integer("100000000000000000000")));
  ASSERT_FALSE(iv.empty());
  long double sum = 0;
  for (const auto& [lo, hi] : iv) {
    EXPECT_LE(hi - lo, Rational::normalize(Integer(1), Integer("100000000000000000000")));
    sum += static_cast<long double>(lo.to_double());
  }
  if (iv.size() == 3) {
    EXPECT_NEAR(static_cast<double>(sum), (b.b2 / Rational(2)).to_double(), 1e-12);
  }
  const auto cf = cubic_formula_alpha(b);
  EXPECT_LT(static_cast<double>(cf.residual), 1e-15);
  bool inside = false;
  for (const auto& [lo, hi] : iv)
    inside = inside || std::abs(static_cast<double>(cf.alpha) - lo.to_double()) < 1e-12;
  EXPECT_TRUE(inside);
  // p and q from the generic closed forms, specialized afterwards.
  const auto& g = depressed_reduced();
  const std::vector<Binding> at{{Var::c, Rational(1)}, {Var::d, Rational(6)}};
  const Rational b2 = g.b2.evaluate(at), b0 = g.b0.evaluate(at), b1 = g.b1.evaluate(at);
  EXPECT_EQ(r.p, -(b2 * b2) / Rational(12) - b0);
  EXPECT_EQ(r.q, -(b2 * b2 * b2) / Rational(108) + b2 * b0 / Rational(3) - b1 * b1 / Rational(8));
}

TEST(Resolvent, AlwaysHasTheRationalRootFromB2) {
  // K^3 + 2 b2 K^2 + (b2^2 - 4 b0) K - b1^2 vanishes at K = (c^2 - 6cd + d^2)/(16 c^2 d^2).
  const auto& g = depressed_reduced();
  const RatFunc K{MPoly::parse("c^2 - 6*c*d + d^2"), MPoly::parse("16*c^2*d^2")};
  const RatFunc v = K * K * K + RatFunc(MPoly(2)) * g.b2 * K * K + (g.b2 * g.b2 - RatFunc(MPoly(4)) * g.b0) * K -
                    g.b1 * g.b1;
  EXPECT_TRUE(v.num.is_zero() || equivalent(v, RatFunc(MPoly(0))));
}

TEST(EqualityCurve, PrintedCurveIsInsolubleAtThree) {
  const auto rep = equality_curve_check();
  EXPECT_TRUE(rep.homogeneous_degree12);
  EXPECT_EQ(rep.verdict.outcome, Outcome::NoPoints);
  EXPECT_TRUE(rep.eliminant_structure);
}

TEST(Surface, IdentitiesAndPlantedSolution) {
  EXPECT_TRUE(surface_identity_holds());
  const auto q = planted_quartic(-1, -3, 5);
  const auto pts = surface_points(q);
  EXPECT_NE(std::find(pts.begin(), pts.end(), std::make_pair(Rational(4), Rational(2))), pts.end());
  EXPECT_NE(std::find(pts.begin(), pts.end(), std::make_pair(Rational(4), Rational(-2))), pts.end());
  // Independent check that the planted quartic is the stated product.
  const UPoly quartic{q.b0, q.b1, q.b2, Rational(0), Rational(1)};
  EXPECT_EQ(quartic, UPoly::from_high({1, -4, 5}) * UPoly::from_high({1, 4, 3}));
  // The scanner reports a planted cell and nothing else.
  const auto hits = surface_scan(2, [&](const Rational& C, const Rational& D) -> std::optional<DepressedQuartic> {
    if (C == Rational(1, 2) && D == Rational(-2)) return q;
    return std::nullopt;
  });
  ASSERT_EQ(hits.size(), pts.size());
  EXPECT_EQ(hits[0].C, Rational(1, 2));
  EXPECT_TRUE(hits[0].within_bound || height(hits[0].z).value > 2);
}

TEST(Surface, NoPointsAtSmallHeight) { EXPECT_TRUE(surface_search(4).empty()); }

TEST(Sieve, PrimitivePairScaling) {
  const auto pp = primitive_pair(Rational(2, 3), Rational(-4, 9));
  EXPECT_EQ(pp.a, 3);
  EXPECT_EQ(pp.b, -2);
  EXPECT_EQ(Rational(pp.a) / pp.lambda, Rational(2, 3));
  EXPECT_EQ(Rational(pp.b) / pp.lambda, Rational(-4, 9));
}
