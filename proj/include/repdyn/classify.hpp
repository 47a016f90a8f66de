#pragma once

/**
 * @file classify.hpp
 * @brief Periodic vectors by period: the period-1 conic and Pell
 * correspondence, the period-2 and period-3 parametrized families, and the
 * period-4 and period-5 eliminants R(y), S(y) with exact witnesses over
 * number fields.
 */

#include "repdyn/dynamics.hpp"
#include "repdyn/exact.hpp"
#include "repdyn/modpoly.hpp"
#include "repdyn/numberfield.hpp"
#include "repdyn/polyring.hpp"
#include "repdyn/typeclasses.hpp"
#include "repdyn/upoly.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace repdyn {

// ---------------------------------------------------------------------------
// Period 1
// ---------------------------------------------------------------------------

/// (1/(C + D t^2), t/(C + D t^2)) on the conic C x^2 - x + D y^2 = 0.
inline Vec2<Rational> period1_point(const Rational& C, const Rational& D, const Rational& tparam) {
  const Rational den = C + D * tparam * tparam;
  if (den.is_zero()) throw std::domain_error("period1_point: C + D t^2 vanishes");
  Vec2<Rational> v{Rational(1) / den, tparam / den};
  if (replace_step(Form<Rational>(C, D), v, Side::L) != v)
    throw std::logic_error("period1_point: point is not fixed by f_L");
  return v;
}

/// The trivial fixed vector (0, 0).
inline Vec2<Rational> period1_trivial() { return {Rational(0), Rational(0)}; }

struct PellSolution {
  Integer X;
  Integer Y;
  Integer E;
};

/// Fundamental solution of X^2 - E Y^2 = 1 from the continued fraction of sqrt(E).
inline PellSolution pell_fundamental(const Integer& E) {
  if (sgn(E) <= 0) throw std::invalid_argument("pell_fundamental: E must be positive");
  if (isqrt_exact(E)) throw std::invalid_argument("pell_fundamental: E = " + E.get_str() + " is a perfect square");
  Integer a0;
  mpz_sqrt(a0.get_mpz_t(), E.get_mpz_t());
  Integer m = 0, d = 1, a = a0;
  Integer h_prev = 1, h = a0, k_prev = 0, k = 1;
  while (h * h - E * k * k != 1) {
    m = d * a - m;
    d = (E - m * m) / d;
    a = (a0 + m) / d;
    Integer h_next = a * h + h_prev, k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return {h, k, E};
}

/**
 * Integral vectors fixed by f_L. In the definite case CD > 0 these are (0,0)
 * and, when |C| = 1, (C, 0). Otherwise the first `count` nontrivial Pell
 * solutions of X^2 - 4|CD| Y^2 = 1 are mapped to x = (1 +- X)/(2C), y = Y,
 * keeping the signs for which x is integral.
 */
inline std::vector<Vec2<Rational>> period1_integral(const Integer& C, const Integer& D, int count) {
  if (C == 0 || D == 0) throw std::invalid_argument("period1_integral: C and D must be nonzero");
  std::vector<Vec2<Rational>> out{period1_trivial()};
  if (abs(C) == 1) out.push_back({Rational(C), Rational(0)});
  if (sgn(C) * sgn(D) > 0) return out;
  const Integer E = 4 * abs(C * D);
  if (isqrt_exact(E)) return out;
  const PellSolution fund = pell_fundamental(E);
  Integer X = fund.X, Y = fund.Y;
  const Integer twoC = 2 * C;
  for (int i = 0; i < count; ++i) {
    for (const Integer& num : {Integer(1 + X), Integer(1 - X)}) {
      if (mpz_divisible_p(num.get_mpz_t(), twoC.get_mpz_t())) {
        Vec2<Rational> v{Rational(Integer(num / twoC)), Rational(Y)};
        if (replace_step(Form<Rational>(Rational(C), Rational(D)), v, Side::L) != v)
          throw std::logic_error("period1_integral: Pell correspondence failed");
        out.push_back(v);
      }
    }
    // Next solution: (X + Y sqrt E)(X1 + Y1 sqrt E).
    Integer nX = X * fund.X + E * Y * fund.Y, nY = X * fund.Y + Y * fund.X;
    X = nX;
    Y = nY;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Periods 2 and 3
// ---------------------------------------------------------------------------

struct Period2Family {
  Rational CD;
  Rational C;
  Rational D;
  Rational y0;
  std::array<Rational, 2> x;
  /// True when the prefix check shows (x, y0) is not of exact type (L,L).
  bool degenerate = false;
};

/// CD = -(n^2 + 3)/(4 m^2), y0 = m, x = (-1 +- n)/(2C).
inline Period2Family period2_family(const Rational& mparam, const Rational& nparam, const Rational& C) {
  if (mparam.is_zero()) throw std::invalid_argument("period2_family: m must be nonzero");
  if (C.is_zero()) throw std::invalid_argument("period2_family: C must be nonzero");
  Period2Family out;
  out.CD = -(nparam * nparam + Rational(3)) / (Rational(4) * mparam * mparam);
  out.C = C;
  out.D = out.CD / C;
  out.y0 = mparam;
  out.x = {(Rational(-1) + nparam) / (Rational(2) * C), (Rational(-1) - nparam) / (Rational(2) * C)};
  const Form<Rational> f(out.C, out.D);
  const TypeWord LL{Side::L, Side::L};
  out.degenerate = !(is_periodic_of_type(f, Vec2<Rational>{out.x[0], out.y0}, LL) &&
                     is_periodic_of_type(f, Vec2<Rational>{out.x[1], out.y0}, LL));
  return out;
}

struct Period3Family {
  Rational CD;
  Rational C;
  Rational D;
  Rational y0;
  /// A 3-cycle of x -> C x^2 + D y0^2, in orbit order from its least element.
  std::array<Rational, 3> cycle;
};

inline Rational period3_cd(const Rational& tau, const Rational& n) {
  const Rational t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau, t5 = t4 * tau, t6 = t5 * tau;
  const Rational num = t6 + Rational(2) * t5 + Rational(4) * t4 + Rational(8) * t3 + Rational(9) * t2 +
                       Rational(4) * tau + Rational(1);
  const Rational den = Rational(4) * n * n * t2 * (tau + Rational(1)) * (tau + Rational(1));
  return -num / den;
}

/// The 3-cycle comes from the rational roots of Phi_{(L,L,L),L} at y = n.
inline Period3Family period3_family(const Rational& tau, const Rational& nparam, const Rational& C) {
  if (tau.is_zero() || tau == Rational(-1)) throw std::invalid_argument("period3_family: tau must avoid -1 and 0");
  if (nparam.is_zero()) throw std::invalid_argument("period3_family: n must be nonzero");
  if (C.is_zero()) throw std::invalid_argument("period3_family: C must be nonzero");
  Period3Family out;
  out.CD = period3_cd(tau, nparam);
  out.C = C;
  out.D = out.CD / C;
  out.y0 = nparam;
  const TypeWord LLL{Side::L, Side::L, Side::L};
  const UPoly cyc = specialize_phi(LLL, Side::L, C, out.D).specialize({{Var::y, nparam}}).to_upoly(Var::x);
  const Form<Rational> f(C, out.D);
  for (const auto& r : rational_roots(cyc)) {
    Vec2<Rational> v{r, nparam};
    if (!is_periodic_of_type(f, v, LLL)) continue;
    Vec2<Rational> v1 = replace_step(f, v, Side::L), v2 = replace_step(f, v1, Side::L);
    std::array<Rational, 3> c{v.x, v1.x, v2.x};
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    out.cycle = c;
    return out;
  }
  throw std::logic_error("period3_family: no rational 3-cycle found");
}

/// Non-degenerate period-2 families through (C, D) with parameter m of height <= H.
inline std::vector<Period2Family> period2_search(const Rational& C, const Rational& D, long H) {
  if (C.is_zero() || D.is_zero()) throw std::invalid_argument("period2_search: C and D must be nonzero");
  std::vector<Period2Family> out;
  const Rational CD = C * D;
  for (const auto& m : height_grid(H)) {
    if (m.sign() < 0) continue;
    auto n = sqrt_exact(Rational(-4) * m * m * CD - Rational(3));
    if (!n) continue;
    auto fam = period2_family(m, *n, C);
    if (!fam.degenerate) out.push_back(std::move(fam));
  }
  return out;
}

/// Period-3 families through (C, D) with parameter tau of height <= H.
inline std::vector<Period3Family> period3_search(const Rational& C, const Rational& D, long H) {
  if (C.is_zero() || D.is_zero()) throw std::invalid_argument("period3_search: C and D must be nonzero");
  std::vector<Period3Family> out;
  const Rational CD = C * D;
  for (const auto& tau : height_grid(H)) {
    if (tau == Rational(-1)) continue;
    auto n = sqrt_exact(period3_cd(tau, Rational(1)) / CD);
    if (!n) continue;
    for (const Rational& y : {*n, -*n}) out.push_back(period3_family(tau, y, C));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Periods 4 and 5
// ---------------------------------------------------------------------------

/// R(c, d, y) with coefficients a4..a0 as printed for the (L,R,L,R) eliminant.
inline const MPoly& r_poly_generic() {
  static const MPoly R = MPoly::parse(
      "16*c^2*d^3*(d-c)^2*y^4 + 8*c*d^2*(d+c)*(d-c)^2*y^3"
      " + (d^4+6*c*d^3+12*c^2*d^2-2*c^3*d-c^4)*(d-c)*y^2"
      " + (d^3+7*c*d^2-3*c^2*d-c^3)*(d-c)*y + (d^3-2*c*d^2+5*c^2*d+c^3)");
  return R;
}

/// Coefficient a_k of R as a polynomial in (c, d).
inline MPoly r_coefficient(int k) {
  return r_poly_generic().coefficients_in(Var::y).at(static_cast<std::size_t>(k));
}

inline UPoly r_poly(const Rational& C, const Rational& D) {
  if (C.is_zero() || D.is_zero()) throw std::invalid_argument("r_poly: C and D must be nonzero");
  return r_poly_generic().specialize({{Var::c, C}, {Var::d, D}}).to_upoly(Var::y);
}

/// S(c, d, y) with the printed coefficients a0..a9 for the (L,L,R,L,R) eliminant.
inline const MPoly& s_poly_generic() {
  static const MPoly S = [] {
    const MPoly a0 = MPoly::parse("c^7 + 7*c^6*d + 21*c^5*d^2 + 37*c^4*d^3 - 7*c^3*d^4 + 91*c^2*d^5 - 6*c*d^6 + d^7");
    const MPoly a1 = MPoly::parse(
        "c^8 - 25*c^6*d^2 - 59*c^5*d^3 - 76*c^4*d^4 + 190*c^3*d^5 + 56*c^2*d^6 + 10*c*d^7 + d^8");
    const MPoly a2 = MPoly::parse(
        "c^9 + c^8*d + 7*c^7*d^2 + 104*c^6*d^3 + 55*c^5*d^4 + 12*c^4*d^5 + 38*c^3*d^6 + 96*c^2*d^7 + 9*c*d^8 + d^9");
    const MPoly a3 = MPoly::parse(
        "c*(c^9 + 2*c^8*d + 8*c^7*d^2 + 30*c^6*d^3 - 192*c^5*d^4 + 210*c^4*d^5 - 112*c^3*d^6 + 40*c^2*d^7"
        " - 16*c*d^8 + 16*d^9)");
    const MPoly a4 = MPoly::parse(
        "c^2*(c^9 + c^8*d - 14*c^7*d^2 - 30*c^6*d^3 - 146*c^5*d^4 + 208*c^4*d^5 + 234*c^3*d^6 - 128*c^2*d^7"
        " - 136*c*d^8 + 32*d^9)");
    const MPoly a5 = MPoly::parse(
        "c^3*(c^9 + 2*c^8*d + 9*c^7*d^2 + 112*c^6*d^3 + 56*c^5*d^4 + 160*c^4*d^5 - 32*c^3*d^6 - 496*c^2*d^7"
        " + 48*c*d^8 - 96*d^9)");
    const MPoly a6 = MPoly::parse(
        "c^3*(c^10 + 3*c^9*d + 11*c^8*d^2 + 41*c^7*d^3 - 152*c^6*d^4 + 264*c^5*d^5 + 144*c^4*d^6"
        " + 240*c^3*d^7 - 64*c^2*d^8 - 288*c*d^9 + 64*d^10)");
    const MPoly a7 = MPoly::parse("c^6 - 7*c^4*d^2 + 54*c^3*d^3 + 36*c^2*d^4 + 8*c*d^5 - 32*d^6");
    const MPoly a8 = MPoly::parse("c^6 + 5*c^4*d^2 - 14*c^3*d^3 + 28*c^2*d^4 + 40*c*d^5 - 16*d^6");
    const MPoly a9 = MPoly::parse("-2*c*d + 6*d^2");
    auto y = [](int k) { return pow(var(Var::y), static_cast<unsigned>(k)); };
    const MPoly lead = MPoly::parse("256*c^7*d^6*(c+d)");
    return lead * MPoly::parse("(c+d)*(c^2 - 3*c*d + 4*d^2)") * y(10) + lead * a9 * y(9) +
           MPoly::parse("32*c^5*d^3*(c+d)") * a8 * y(8) + MPoly::parse("16*c^5*d^3") * a7 * y(7) + a6 * y(6) +
           a5 * y(5) + a4 * y(4) + a3 * y(3) + a2 * y(2) + a1 * y(1) + a0;
  }();
  return S;
}

inline UPoly s_poly(const Rational& C, const Rational& D) {
  if (C.is_zero() || D.is_zero()) throw std::invalid_argument("s_poly: C and D must be nonzero");
  return s_poly_generic().specialize({{Var::c, C}, {Var::d, D}}).to_upoly(Var::y);
}

struct PeriodicWitness {
  ModulusPtr modulus;
  Vec2<NFElem> vector;
  TypeWord type;
  Rational C;
  Rational D;
};

/// Re-checks the defining invariant of a witness.
inline bool verify(const PeriodicWitness& w) {
  return is_periodic_of_type(lift(Form<Rational>(w.C, w.D), w.modulus), w.vector, w.type);
}

/**
 * For each root y of `factor` (taken over Q[y]/(factor)), recovers x as the
 * root of the gcd of Phi_{t,L} and Phi_{t,R} specialized to (C, D, y) and
 * returns the verified witnesses. Zero divisors split the modulus.
 */
inline std::vector<PeriodicWitness> witnesses_from_factor(const TypeWord& t, const Rational& C, const Rational& D,
                                                          const UPoly& factor) {
  const MPoly pl = specialize_phi(t, Side::L, C, D), pr = specialize_phi(t, Side::R, C, D);
  const Form<Rational> f(C, D);
  std::vector<PeriodicWitness> out;
  std::vector<ModulusPtr> todo{NFModulus::make(factor)};
  while (!todo.empty()) {
    ModulusPtr mod = todo.back();
    todo.pop_back();
    try {
      const NFElem y0 = NFElem::generator(mod);
      const NFPoly g = gcd(NFPoly::from_bivariate(pl, Var::x, Var::y, y0), NFPoly::from_bivariate(pr, Var::x, Var::y, y0));
      if (g.degree() != 1)
        throw std::runtime_error("witness recovery: gcd in x has degree " + std::to_string(g.degree()) +
                                 " over modulus " + mod->display().str());
      PeriodicWitness w{mod, Vec2<NFElem>{-g.coeffs()[0], y0}, t, C, D};
      if (!verify(w))
        throw std::runtime_error("witness recovery: vector over " + mod->display().str() + " is not of type " +
                                 t.tuple_str());
      out.push_back(std::move(w));
    } catch (const ZeroDivisor& z) {
      auto [a, b] = split_modulus(*mod, z.factor());
      todo.push_back(b);
      todo.push_back(a);
    }
  }
  return out;
}

/// Res_x(Phi_L, Phi_R) at (C, D) with the factors y and (C+D)y - 1 removed, made monic.
inline UPoly r_poly_via_elimination(const Rational& C, const Rational& D) {
  if (C.is_zero() || D.is_zero() || C == D) throw std::invalid_argument("r_poly_via_elimination: need distinct nonzero C, D");
  const TypeWord t = TypeWord::parse("LRLR");
  UPoly res = resultant(specialize_phi(t, Side::L, C, D), specialize_phi(t, Side::R, C, D), Var::x).to_upoly(Var::y);
  const UPoly p0{Rational(0), Rational(1)};
  const UPoly plr{Rational(-1), C + D};
  auto strip = [&res](const UPoly& f) {
    if (f.degree() < 1) return;
    for (;;) {
      auto [q, r] = divmod(res, f);
      if (!r.is_zero() || q.degree() < 0) return;
      res = std::move(q);
    }
  };
  strip(p0);
  strip(plr);
  if (!proportional(res, r_poly(C, D)))
    throw std::runtime_error("r_poly_via_elimination: cleaned resultant is not proportional to R at (" + C.str() +
                             ", " + D.str() + ")");
  return res.monic();
}

/// Witnesses of type (L,R,L,R), one per root of R_{C,D}, grouped by Q-irreducible factor.
inline std::vector<PeriodicWitness> lrlr_vectors(const Rational& C, const Rational& D) {
  if (C.is_zero() || D.is_zero()) throw std::invalid_argument("lrlr_vectors: C and D must be nonzero");
  if (C == D) return {};
  const UPoly R = r_poly(C, D);
  const TypeWord t = TypeWord::parse("LRLR");
  std::vector<UPoly> factors;
  if (R.degree() == 4 && is_squarefree(R)) {
    factors = quartic_factor_shape(R).factors;
  } else {
    factors.push_back(squarefree_part(R));
  }
  std::vector<PeriodicWitness> out;
  for (const auto& fac : factors) {
    auto ws = witnesses_from_factor(t, C, D, fac);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

struct LlrlrReport {
  Rational C;
  Rational D;
  UPoly S;
  int degree = 0;
  std::vector<Rational> rational_roots;
  std::vector<PeriodicWitness> witnesses;
  /// Set when the elimination cross-check was requested.
  std::optional<bool> elimination_divides;
  std::vector<std::string> notes;
};

inline LlrlrReport llrlr_analyze(const Rational& C, const Rational& D, bool cross_check = false) {
  LlrlrReport rep;
  rep.C = C;
  rep.D = D;
  rep.S = s_poly(C, D);
  rep.degree = rep.S.degree();
  if (rep.degree < 10) rep.notes.push_back("S has degree " + std::to_string(rep.degree) + " < 10 at this (C, D)");
  if (rep.S.is_zero()) {
    rep.notes.push_back("S vanishes identically");
    return rep;
  }
  rep.rational_roots = rational_roots(rep.S);
  const TypeWord t = TypeWord::parse("LLRLR");
  if (C == D) {
    if (!rep.rational_roots.empty()) rep.notes.push_back("C = D: rational roots may come from lower-period vectors");
  } else {
    for (const auto& r : rep.rational_roots) {
      auto ws = witnesses_from_factor(t, C, D, UPoly{-r, Rational(1)});
      rep.witnesses.insert(rep.witnesses.end(), ws.begin(), ws.end());
    }
  }
  if (cross_check) {
    const UPoly res =
        resultant(specialize_phi(t, Side::L, C, D), specialize_phi(t, Side::R, C, D), Var::x).to_upoly(Var::y);
    rep.elimination_divides = !res.is_zero() && divmod(res, rep.S).remainder.is_zero();
  }
  return rep;
}

}  // namespace repdyn
