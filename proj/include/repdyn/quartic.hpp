#pragma once

/**
 * @file quartic.hpp
 * @brief Quartic-formula analysis of R(y): depressed coefficients, the
 * biquadratic obstruction B2, the resolvent cubic, the equality-case curve,
 * the (C, D, z, n) surface and p-adic local solvability by residue lifting.
 */

#include "repdyn/classify.hpp"
#include "repdyn/exact.hpp"
#include "repdyn/polyring.hpp"
#include "repdyn/sieve.hpp"
#include "repdyn/upoly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace repdyn {

// ---------------------------------------------------------------------------
// Rational functions in the ambient variables (no gcd, cancellation on request)
// ---------------------------------------------------------------------------

struct RatFunc {
  MPoly num;
  MPoly den = MPoly(1);

  RatFunc() = default;
  RatFunc(MPoly n) : num(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(MPoly n, MPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den == b.den) return {a.num - b.num, a.den};
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.num.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return {a.num * b.den, a.den * b.num};
  }
  /// Equality as rational functions.
  friend bool equivalent(const RatFunc& a, const RatFunc& b) { return a.num * b.den == b.num * a.den; }

  /// Cancels each listed polynomial from numerator and denominator as often as it divides both.
  RatFunc cancel(const std::vector<MPoly>& candidates) const {
    RatFunc r = *this;
    for (const auto& f : candidates) {
      for (;;) {
        auto qn = try_exact_div(r.num, f);
        if (!qn) break;
        auto qd = try_exact_div(r.den, f);
        if (!qd) break;
        r.num = std::move(*qn);
        r.den = std::move(*qd);
      }
    }
    if (r.den.is_constant()) {
      r.num = r.num.scaled(Rational(1) / r.den.constant_term());
      r.den = MPoly(1);
    }
    return r;
  }

  RatFunc specialize(const std::vector<Binding>& b) const { return {num.specialize(b), den.specialize(b)}; }
  Rational evaluate(const std::vector<Binding>& b) const { return num.evaluate(b) / den.evaluate(b); }
};

// ---------------------------------------------------------------------------
// Depressed quartic
// ---------------------------------------------------------------------------

template <class T>
struct DepressedQuarticT {
  T b2;
  T b1;
  T b0;
};
using DepressedQuartic = DepressedQuarticT<Rational>;
using DepressedQuarticGeneric = DepressedQuarticT<RatFunc>;

/// b2, b1, b0 from the coefficients a4..a3..a0 by the standard depression formulas.
template <class T>
DepressedQuarticT<T> depress(const T& a4, const T& a3, const T& a2, const T& a1, const T& a0) {
  auto k = [](long v) { return T(MPoly(v)); };
  const T a4sq = a4 * a4, a4cu = a4sq * a4, a4qu = a4cu * a4;
  const T a3sq = a3 * a3, a3cu = a3sq * a3, a3qu = a3cu * a3;
  DepressedQuarticT<T> out;
  out.b2 = (k(-3) * a3sq) / (k(8) * a4sq) + a2 / a4;
  out.b1 = a3cu / (k(8) * a4cu) - (a2 * a3) / (k(2) * a4sq) + a1 / a4;
  out.b0 = (k(-3) * a3qu) / (k(256) * a4qu) + (a2 * a3sq) / (k(16) * a4cu) - (a1 * a3) / (k(4) * a4sq) + a0 / a4;
  return out;
}

template <>
inline DepressedQuarticT<Rational> depress(const Rational& a4, const Rational& a3, const Rational& a2,
                                          const Rational& a1, const Rational& a0) {
  const Rational a4sq = a4 * a4, a4cu = a4sq * a4, a4qu = a4cu * a4;
  const Rational a3sq = a3 * a3, a3cu = a3sq * a3, a3qu = a3cu * a3;
  return {Rational(-3) * a3sq / (Rational(8) * a4sq) + a2 / a4,
          a3cu / (Rational(8) * a4cu) - a2 * a3 / (Rational(2) * a4sq) + a1 / a4,
          Rational(-3) * a3qu / (Rational(256) * a4qu) + a2 * a3sq / (Rational(16) * a4cu) -
              a1 * a3 / (Rational(4) * a4sq) + a0 / a4};
}

/// (b2, b1, b0) of the monic depressed form of R_{C,D}.
inline DepressedQuartic depressed_coeffs(const Rational& C, const Rational& D) {
  const UPoly R = r_poly(C, D);
  if (R.coeff(4).is_zero()) throw std::domain_error("depressed_coeffs: a4 vanishes (need C != D)");
  return depress(R.coeff(4), R.coeff(3), R.coeff(2), R.coeff(1), R.coeff(0));
}

/// Generic depression of R over Q(c, d), straight from the formulas.
inline DepressedQuarticGeneric depressed_generic() {
  std::array<RatFunc, 5> a;
  for (int k = 0; k <= 4; ++k) a[static_cast<std::size_t>(k)] = RatFunc(r_coefficient(k));
  return depress(a[4], a[3], a[2], a[1], a[0]);
}

/// The same coefficients in lowest terms.
inline const DepressedQuarticGeneric& depressed_reduced() {
  static const DepressedQuarticGeneric q{
      RatFunc(MPoly::parse("2*c^4 + c^3*d - 27*c^2*d^2 - 9*c*d^3 + d^4"), MPoly::parse("32*c^2*d^3*(c-d)")),
      RatFunc(MPoly::parse("-(c^2 - 6*c*d + d^2)*(c^2 + 4*c*d - d^2)"), MPoly::parse("64*c^2*d^4*(c-d)")),
      RatFunc(MPoly::parse("4*c^7 - 23*c^6*d + 110*c^5*d^2 + 1455*c^4*d^3 - 360*c^3*d^4 + 103*c^2*d^5"
                           " - 10*c*d^6 + d^7"),
              MPoly::parse("4096*c^4*d^5*(c-d)^2"))};
  return q;
}

/**
 * Checks a4^5 * 4^4 * R(u - a3/(4 a4)) against the depressed quartic with the
 * formula coefficients, as an identity of polynomials in (c, d, u); both
 * sides are multiplied through so no division is needed.
 */
inline bool depressed_identity_holds() {
  std::array<MPoly, 5> a;
  for (int k = 0; k <= 4; ++k) a[static_cast<std::size_t>(k)] = r_coefficient(k);
  const MPoly u = var(Var::u);
  const MPoly lin = MPoly(4) * a[4] * u - a[3];  // 4 a4 y
  MPoly lhs;
  for (int k = 0; k <= 4; ++k)
    lhs += a[static_cast<std::size_t>(k)] * pow(lin, static_cast<unsigned>(k)) *
           pow(MPoly(4) * a[4], static_cast<unsigned>(4 - k));
  const auto g = depressed_generic();
  const MPoly scale = MPoly(256) * pow(a[4], 5);
  auto times = [&](const RatFunc& b) { return exact_div(scale * b.num, b.den); };
  const MPoly rhs = scale * pow(u, 4) + times(g.b2) * pow(u, 2) + times(g.b1) * u + times(g.b0);
  // lhs = (4 a4)^4 R(y) with 4 a4 y = 4 a4 u - a3, and rhs = 256 a4^5 (u^4 + b2 u^2 + b1 u + b0).
  return lhs == rhs;
}

/// B2 as printed.
inline const MPoly& b2_printed() {
  static const MPoly B = MPoly::parse("-d^4 + 10*c*d^3 - 24*c^2*d^2 - 2*c^3*d + c^4");
  return B;
}

// ---------------------------------------------------------------------------
// p-adic local solvability
// ---------------------------------------------------------------------------

struct LocalVerdict {
  enum class Outcome { NoPoints, PointFound, Inconclusive };
  unsigned long prime = 0;
  int max_level = 0;
  int levels_explored = 0;
  Outcome outcome = Outcome::Inconclusive;
  /// Residue vector (mod prime^witness_level) certified by the Hensel criterion.
  std::vector<Integer> witness;
  int witness_level = 0;
  std::string variables;

  std::string outcome_str() const {
    switch (outcome) {
      case Outcome::NoPoints: return "NoPoints";
      case Outcome::PointFound: return "PointFound";
      default: return "Inconclusive";
    }
  }
};

inline MPoly derivative(const MPoly& p, Var v) {
  std::vector<Term> out;
  const auto i = index_of(v);
  for (const auto& t : p.terms()) {
    if (t.exp[i] == 0) continue;
    Term s = t;
    s.coeff = t.coeff * Rational(static_cast<long>(t.exp[i]));
    --s.exp[i];
    out.push_back(std::move(s));
  }
  return MPoly::from_terms(std::move(out));
}

inline bool is_homogeneous(const MPoly& p) {
  if (p.is_zero()) return true;
  const int d = p.total_degree();
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [d](const Term& t) { return static_cast<int>(total_degree(t.exp)) == d; });
}

namespace detail {

/// Polynomial compiled for evaluation modulo M < 2^62 at vectors indexed by position.
class ModEvaluator {
 public:
  ModEvaluator(const MPoly& p, const std::vector<Var>& vars) {
    for (const auto& t : p.terms()) {
      if (!t.coeff.is_integer()) throw std::invalid_argument("qp_solvable: non-integer coefficient in " + p.str());
      std::vector<unsigned> e;
      for (Var v : vars) e.push_back(t.exp[index_of(v)]);
      terms_.push_back({t.coeff.num(), std::move(e)});
    }
  }
  std::uint64_t eval(const std::vector<std::uint64_t>& x, std::uint64_t M) const {
    unsigned __int128 acc = 0;
    for (const auto& [c, e] : terms_) {
      unsigned __int128 v = mpz_fdiv_ui(c.get_mpz_t(), M);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) v = (v * x[i]) % M;
      acc = (acc + v) % M;
    }
    return static_cast<std::uint64_t>(acc);
  }

 private:
  std::vector<std::pair<Integer, std::vector<unsigned>>> terms_;
};

inline int valuation_u64(std::uint64_t v, unsigned long p, int cap) {
  if (v == 0) return cap;
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

}  // namespace detail

/**
 * Breadth-first lifting of common zeros modulo p, p^2, ... up to p^max_level.
 * A residue vector at level k is certified (PointFound) when some r x r minor
 * of the Jacobian (r = number of polynomials) has valuation e with k > 2e,
 * which by Hensel's lemma guarantees a p-adic zero congruent to it. NoPoints
 * means no residue vector survives at some level. Homogeneous systems are
 * searched over primitive vectors only.
 */
inline LocalVerdict qp_solvable(const std::vector<MPoly>& polys, unsigned long p, int max_level) {
  if (polys.empty()) throw std::invalid_argument("qp_solvable: no polynomials");
  if (p < 2) throw std::invalid_argument("qp_solvable: bad prime");
  VarMask mask = 0;
  for (const auto& f : polys) mask = static_cast<VarMask>(mask | f.variables());
  std::vector<Var> vars;
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (mask & (1u << i)) vars.push_back(static_cast<Var>(i));
  if (vars.empty()) throw std::invalid_argument("qp_solvable: constant system");
  const bool homogeneous = std::all_of(polys.begin(), polys.end(), [](const MPoly& f) { return is_homogeneous(f); });

  LocalVerdict out;
  out.prime = p;
  out.max_level = max_level;
  for (Var v : vars) out.variables += name_of(v);

  // Guard: p^max_level and products must fit in 64 bits.
  long double bound = std::pow(static_cast<long double>(p), max_level);
  if (bound > 4.0e18L) throw std::invalid_argument("qp_solvable: p^max_level too large");

  std::vector<detail::ModEvaluator> eq;
  for (const auto& f : polys) eq.emplace_back(f, vars);
  const std::size_t r = polys.size(), nv = vars.size();
  // Jacobian entries, and the column subsets of size r.
  std::vector<std::vector<detail::ModEvaluator>> jac(r);
  for (std::size_t i = 0; i < r; ++i)
    for (Var v : vars) jac[i].emplace_back(derivative(polys[i], v), vars);
  std::vector<std::vector<std::size_t>> subsets;
  if (r <= nv) {
    std::vector<bool> pick(nv, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < nv; ++i)
        if (pick[i]) s.push_back(i);
      subsets.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  auto certified = [&](const std::vector<std::uint64_t>& x, std::uint64_t M, int k) {
    std::vector<std::vector<Integer>> J(r, std::vector<Integer>(nv));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < nv; ++j) J[i][j] = Integer(static_cast<unsigned long>(jac[i][j].eval(x, M)));
    for (const auto& s : subsets) {
      std::vector<std::vector<Integer>> minor(r, std::vector<Integer>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) minor[i][j] = J[i][s[j]];
      Integer det = det_bareiss(minor);
      mpz_fdiv_r_ui(det.get_mpz_t(), det.get_mpz_t(), M);
      const int e = detail::valuation_u64(det.get_ui(), p, k);
      if (k > 2 * e) return true;
    }
    return false;
  };

  std::vector<std::vector<std::uint64_t>> level;
  std::uint64_t M = 1;
  for (int k = 1; k <= max_level; ++k) {
    const std::uint64_t prevM = M;
    M *= p;
    std::vector<std::vector<std::uint64_t>> next;
    auto consider = [&](const std::vector<std::uint64_t>& x) {
      for (const auto& f : eq)
        if (f.eval(x, M) != 0) return;
      next.push_back(x);
    };
    // Children of each survivor (or all vectors mod p at level 1).
    std::vector<std::vector<std::uint64_t>> parents = (k == 1) ? std::vector<std::vector<std::uint64_t>>{std::vector<std::uint64_t>(nv, 0)} : level;
    for (const auto& base : parents) {
      std::vector<std::uint64_t> digit(nv, 0);
      for (;;) {
        std::vector<std::uint64_t> x(nv);
        bool primitive = false;
        for (std::size_t i = 0; i < nv; ++i) {
          x[i] = base[i] + digit[i] * prevM;
          if (x[i] % p) primitive = true;
        }
        if (!homogeneous || primitive) consider(x);
        std::size_t i = 0;
        while (i < nv && ++digit[i] == p) digit[i++] = 0;
        if (i == nv) break;
      }
    }
    out.levels_explored = k;
    if (next.empty()) {
      out.outcome = LocalVerdict::Outcome::NoPoints;
      return out;
    }
    for (const auto& x : next) {
      if (certified(x, M, k)) {
        out.outcome = LocalVerdict::Outcome::PointFound;
        out.witness_level = k;
        for (auto v : x) out.witness.emplace_back(static_cast<unsigned long>(v));
        return out;
      }
    }
    level = std::move(next);
  }
  out.outcome = LocalVerdict::Outcome::Inconclusive;
  return out;
}

// ---------------------------------------------------------------------------
// The biquadratic obstruction
// ---------------------------------------------------------------------------

struct B2Report {
  bool printed_is_b1_numerator = false;
  std::array<MPoly, 2> factors;
  bool factors_found = false;
  bool product_matches = false;
  std::array<LocalVerdict, 2> verdicts;
  bool ok() const {
    return printed_is_b1_numerator && factors_found && product_matches &&
           verdicts[0].outcome == LocalVerdict::Outcome::NoPoints &&
           verdicts[1].outcome == LocalVerdict::Outcome::NoPoints;
  }
};

/**
 * Splits a binary quartic form with integer coefficients and leading
 * coefficient 1 in c into two monic integer quadratic forms by searching
 * c^2 + s c d + t d^2 with t dividing the last coefficient and |s| bounded
 * by the coefficient bound.
 */
inline std::optional<std::array<MPoly, 2>> split_binary_quartic(const MPoly& form) {
  const UPoly deh = form.specialize({{Var::d, Rational(1)}}).to_upoly(Var::c);
  if (deh.degree() != 4 || deh.lead() != Rational(1)) return std::nullopt;
  Integer bound = 1;
  for (const auto& a : deh.coeffs())
    if (abs(a.num()) + 1 > bound) bound = abs(a.num()) + 1;
  const Integer last = abs(deh.coeff(0).num());
  auto homog = [](const UPoly& q) {
    return MPoly::parse("c^2") + var(Var::c) * var(Var::d) * MPoly(q.coeff(1)) +
           var(Var::d) * var(Var::d) * MPoly(q.coeff(0));
  };
  for (Integer t = 1; t <= last; ++t) {
    if (!mpz_divisible_p(last.get_mpz_t(), t.get_mpz_t())) continue;
    for (const Integer& tt : {Integer(t), Integer(-t)}) {
      for (Integer s = -bound; s <= bound; ++s) {
        const UPoly q{Rational(tt), Rational(s), Rational(1)};
        auto [quo, rem] = divmod(deh, q);
        if (!rem.is_zero()) continue;
        if (!std::all_of(quo.coeffs().begin(), quo.coeffs().end(), [](const Rational& a) { return a.is_integer(); }))
          continue;
        return std::array<MPoly, 2>{homog(q), homog(quo)};
      }
    }
  }
  return std::nullopt;
}

inline B2Report b2_curve_check(int max_level = 10) {
  B2Report rep;
  const auto& red = depressed_reduced();
  // b1 * 64 c^2 d^4 (c - d) = -B2.
  rep.printed_is_b1_numerator =
      equivalent(red.b1 * RatFunc(MPoly::parse("64*c^2*d^4*(c-d)")), RatFunc(-b2_printed())) &&
      equivalent(red.b1, depressed_generic().b1);
  if (auto f = split_binary_quartic(b2_printed())) {
    rep.factors_found = true;
    rep.factors = *f;
    rep.product_matches = (*f)[0] * (*f)[1] == b2_printed();
    for (std::size_t i = 0; i < 2; ++i) rep.verdicts[i] = qp_solvable({(*f)[i]}, 3, max_level);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Resolvent cubic and the cubic formula
// ---------------------------------------------------------------------------

struct Resolvent {
  UPoly T;  ///< 2x^3 - b2 x^2 - 2 b0 x + (b2 b0 - b1^2/4)
  Rational p;
  Rational q;
};

inline Resolvent resolvent_from(const DepressedQuartic& b) {
  Resolvent r;
  r.T = UPoly{b.b2 * b.b0 - b.b1 * b.b1 / Rational(4), Rational(-2) * b.b0, -b.b2, Rational(2)};
  r.p = -(b.b2 * b.b2) / Rational(12) - b.b0;
  r.q = -(b.b2 * b.b2 * b.b2) / Rational(108) + b.b2 * b.b0 / Rational(3) - b.b1 * b.b1 / Rational(8);
  return r;
}

inline Resolvent resolvent_and_radicals(const Rational& C, const Rational& D) {
  return resolvent_from(depressed_coeffs(C, D));
}

struct CubicFormulaRoot {
  long double alpha = 0;
  long double residual = 0;  ///< |T(alpha)| relative to the coefficient scale
};

/**
 * Numeric real root of T from alpha = b2/6 + w - p/(3w), with w a complex
 * cube root of -q/2 + sqrt(q^2/4 + p^3/27); the branch giving the most
 * nearly real alpha is returned together with its residual.
 */
inline CubicFormulaRoot cubic_formula_alpha(const DepressedQuartic& b) {
  using cx = std::complex<long double>;
  const Resolvent r = resolvent_from(b);
  const long double p = static_cast<long double>(r.p.to_double()), q = static_cast<long double>(r.q.to_double());
  const long double b2 = static_cast<long double>(b.b2.to_double());
  const cx disc = std::sqrt(cx(q * q / 4 + p * p * p / 27, 0));
  const cx base = -q / 2 + disc;
  CubicFormulaRoot best;
  long double best_im = INFINITY;
  const long double pi = std::acos(-1.0L);
  for (int k = 0; k < 3; ++k) {
    cx w = std::pow(base, 1.0L / 3) * std::polar(1.0L, 2 * pi * k / 3);
    if (std::abs(w) == 0) continue;
    cx a = b2 / 6 + w - p / (3.0L * w);
    if (std::abs(a.imag()) < best_im) {
      best_im = std::abs(a.imag());
      best.alpha = a.real();
    }
  }
  long double scale = 0, val = 0;
  for (int k = r.T.degree(); k >= 0; --k) {
    const long double c = static_cast<long double>(r.T.coeff(k).to_double());
    val = val * best.alpha + c;
    scale = std::max(scale, std::fabs(c) * std::pow(std::max(1.0L, std::fabs(best.alpha)), k));
  }
  best.residual = scale > 0 ? std::fabs(val) / scale : std::fabs(val);
  return best;
}

// ---------------------------------------------------------------------------
// The equality case
// ---------------------------------------------------------------------------

inline const MPoly& equality_curve_printed() {
  static const MPoly P = MPoly::parse(
      "-25*d^12 + 405*c*d^11 - 4752*c^2*d^10 + 37104*c^3*d^9 - 172194*c^4*d^8 + 438210*c^5*d^7"
      " - 517584*c^6*d^6 + 114504*c^7*d^5 + 51027*c^8*d^4 - 10879*c^9*d^3 - 1608*c^10*d^2 + 240*c^11*d"
      " + 16*c^12");
  return P;
}

struct EqualityCurveReport {
  bool homogeneous_degree12 = false;
  /// Primitive resultant in (c, d) of T(alpha) and 8 alpha^3 - 4 alpha^2 b2 - b1^2.
  MPoly eliminant;
  bool divides = false;
  bool divides_dehomogenized = false;
  /// Whether the eliminant equals const * c^i d^j (c-d)^k B2^2 N0^3 with N0 the numerator of b0.
  bool eliminant_structure = false;
  LocalVerdict verdict;
};

/// Res_alpha(T(alpha), 8 alpha^3 - 4 alpha^2 b2 - b1^2) over Z[c, d], made primitive; alpha is the variable u.
inline MPoly equality_eliminant() {
  const auto& b = depressed_reduced();
  const MPoly a = var(Var::u);
  const RatFunc T = RatFunc(MPoly(2) * pow(a, 3)) - b.b2 * RatFunc(a * a) - RatFunc(MPoly(2) * a) * b.b0 +
                    (b.b2 * b.b0 - b.b1 * b.b1 * RatFunc(MPoly(Rational(1, 4))));
  const RatFunc E = RatFunc(MPoly(8) * pow(a, 3)) - RatFunc(MPoly(4) * a * a) * b.b2 - b.b1 * b.b1;
  auto clear = [](const RatFunc& f) {
    const RatFunc g = f.cancel({var(Var::c), var(Var::d), var(Var::c) - var(Var::d)});
    // The denominator only involves c, d, so the numerator is a polynomial multiple in alpha.
    return g.num;
  };
  return resultant(clear(T), clear(E), Var::u).primitive();
}

inline EqualityCurveReport equality_curve_check(int max_level = 12) {
  EqualityCurveReport rep;
  const MPoly& P = equality_curve_printed();
  rep.homogeneous_degree12 = is_homogeneous(P) && P.total_degree() == 12;
  rep.eliminant = equality_eliminant();
  rep.divides = try_exact_div(rep.eliminant, P).has_value();
  {
    const UPoly e = rep.eliminant.specialize({{Var::d, Rational(1)}}).to_upoly(Var::c);
    const UPoly p = P.specialize({{Var::d, Rational(1)}}).to_upoly(Var::c);
    rep.divides_dehomogenized = divmod(e, p).remainder.is_zero();
  }
  {
    MPoly rest = rep.eliminant;
    const MPoly n0 = depressed_reduced().b0.num;
    for (const MPoly& f : {var(Var::c), var(Var::d), var(Var::c) - var(Var::d), b2_printed(), n0})
      while (auto q = try_exact_div(rest, f)) rest = std::move(*q);
    auto count = [&](const MPoly& f) {
      int k = 0;
      MPoly r = rep.eliminant;
      while (auto q = try_exact_div(r, f)) {
        r = std::move(*q);
        ++k;
      }
      return k;
    };
    rep.eliminant_structure = rest.is_constant() && count(b2_printed()) == 2 && count(n0) == 3;
  }
  rep.verdict = qp_solvable({P}, 3, max_level);
  return rep;
}

// ---------------------------------------------------------------------------
// The surface in (c, d, z, n)
// ---------------------------------------------------------------------------

struct SurfaceEquations {
  MPoly E1;  ///< in c, d, z
  MPoly E2;  ///< in c, d, z, n
};

namespace detail {

inline MPoly primitive_numerator(const RatFunc& f) {
  return f.cancel({var(Var::c), var(Var::d), var(Var::c) - var(Var::d)}).num.primitive();
}

inline RatFunc e1_rational() {
  const auto& b = depressed_reduced();
  const RatFunc z(var(Var::z));
  const RatFunc s = z * z + b.b2;
  return z * z * s * s - RatFunc(MPoly(4)) * b.b0 * z * z - b.b1 * b.b1;
}

inline RatFunc e2_rational() {
  const auto& b = depressed_reduced();
  const RatFunc z(var(Var::z)), n(var(Var::n));
  return z * z * z + RatFunc(MPoly(2)) * b.b2 * z + n * n * z - RatFunc(MPoly(2)) * b.b1;
}

}  // namespace detail

/// Denominator-cleared, primitive forms of z^2(z^2+b2)^2 - 4 b0 z^2 - b1^2 and z^3 + 2 b2 z + n^2 z - 2 b1.
inline SurfaceEquations surface_equations() {
  return {detail::primitive_numerator(detail::e1_rational()), detail::primitive_numerator(detail::e2_rational())};
}

/// 4 T((z^2 + b2)/2) equals z^2(z^2+b2)^2 - 4 b0 z^2 - b1^2, and substituting
/// alpha = (z^2 + b2)/2 into 2 b1 = z(n^2 + 2 alpha + b2) gives E2 = 0.
inline bool surface_identity_holds() {
  const auto& b = depressed_reduced();
  const RatFunc z(var(Var::z)), n(var(Var::n));
  const RatFunc alpha = (z * z + b.b2) * RatFunc(MPoly(Rational(1, 2)));
  const RatFunc T = RatFunc(MPoly(2)) * alpha * alpha * alpha - b.b2 * alpha * alpha - RatFunc(MPoly(2)) * b.b0 * alpha +
                    b.b2 * b.b0 - b.b1 * b.b1 * RatFunc(MPoly(Rational(1, 4)));
  const bool first = equivalent(RatFunc(MPoly(4)) * T, detail::e1_rational());
  const RatFunc raw2 = z * (n * n + RatFunc(MPoly(2)) * alpha + b.b2) - RatFunc(MPoly(2)) * b.b1;
  const bool second = equivalent(raw2, detail::e2_rational());
  return first && second;
}

struct SurfaceHit {
  Rational C, D, z, n;
  bool within_bound = false;
};

/**
 * All (z, n) with E1 = E2 = 0 for one depressed quartic: E1 is a cubic in
 * w = z^2 (the same cubic as K^3 + 2 b2 K^2 + (b2^2 - 4 b0) K - b1^2), so its
 * rational square roots give every rational z, and E2 then fixes n^2.
 */
inline std::vector<std::pair<Rational, Rational>> surface_points(const DepressedQuartic& b) {
  std::vector<std::pair<Rational, Rational>> out;
  const UPoly cubic{-(b.b1 * b.b1), b.b2 * b.b2 - Rational(4) * b.b0, Rational(2) * b.b2, Rational(1)};
  if (cubic.is_zero()) return out;
  for (const auto& w : rational_roots(cubic)) {
    if (w.sign() <= 0) continue;
    auto s = sqrt_exact(w);
    if (!s) continue;
    for (const Rational& z : {*s, -*s}) {
      const Rational n2 = (Rational(2) * b.b1 - z * z * z - Rational(2) * b.b2 * z) / z;
      if (auto n = sqrt_exact(n2)) {
        out.emplace_back(z, *n);
        if (!n->is_zero()) out.emplace_back(z, -*n);
      }
    }
  }
  return out;
}

/// Closed-form depressed coefficients, cheaper than going through R.
inline DepressedQuartic depressed_fast(const Rational& C, const Rational& D) {
  const auto& r = depressed_reduced();
  const std::vector<Binding> at{{Var::c, C}, {Var::d, D}};
  return {r.b2.evaluate(at), r.b1.evaluate(at), r.b0.evaluate(at)};
}

/// Integer pair (a, b) = lambda (C, D) with lambda > 0 and gcd(a, b) = 1. Since
/// the y^i coefficient of R (resp. S) is homogeneous of degree 3 + i (resp.
/// 7 + i), the specializations at (C, D) and (a, b) differ by y -> lambda y.
struct PrimitivePair {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Rational lambda;
};

inline PrimitivePair primitive_pair(const Rational& C, const Rational& D) {
  Integer a = C.num() * D.den(), b = D.num() * C.den();
  Integer g = gcd(a, b);
  a /= g;
  b /= g;
  if (!a.fits_slong_p() || !b.fits_slong_p()) throw std::overflow_error("primitive_pair: components exceed 64 bits");
  return {a.get_si(), b.get_si(), Rational::normalize(Integer(C.den() * D.den()), g)};
}

inline const ResolventSieve& depressed_sieve() {
  static const ResolventSieve s = [] {
    const auto& r = depressed_reduced();
    return ResolventSieve(r.b2.num, r.b2.den, r.b1.num, r.b1.den, r.b0.num, r.b0.den);
  }();
  return s;
}

using QuarticProvider = std::function<std::optional<DepressedQuartic>(const Rational&, const Rational&)>;

/// The depressed form of R_{C,D}, or nullopt when the sieve rules out surface points.
inline std::optional<DepressedQuartic> surface_candidate(const Rational& C, const Rational& D) {
  const PrimitivePair pp = primitive_pair(C, D);
  if (!depressed_sieve().may_have_root(pp.a, pp.b, true)) return std::nullopt;
  return depressed_fast(C, D);
}

/// Scans all distinct nonzero (C, D) of height <= H through `provider`.
inline std::vector<SurfaceHit> surface_scan(long H, const QuarticProvider& provider) {
  const auto grid = height_grid(H);
  const Integer bound(H);
  std::vector<SurfaceHit> hits;
  for (const auto& C : grid)
    for (const auto& D : grid) {
      if (C == D) continue;
      const auto q = provider(C, D);
      if (!q) continue;
      for (const auto& [z, n] : surface_points(*q))
        hits.push_back({C, D, z, n, height(z).value <= bound && height(n).value <= bound});
    }
  return hits;
}

inline std::vector<SurfaceHit> surface_search(long H) {
  if (H < 1) throw std::invalid_argument("surface_search: bound must be positive");
  return surface_scan(H, surface_candidate);
}

/// The depressed quartic (u^2 - k u + m)(u^2 + k u + s1 s2) with k = -(s1 + s2),
/// whose surface point is (z, n) = (k, s1 - s2).
inline DepressedQuartic planted_quartic(const Rational& s1, const Rational& s2, const Rational& m) {
  const Rational k = -(s1 + s2), n0 = s1 * s2;
  return {m + n0 - k * k, k * (m - n0), m * n0};
}

}  // namespace repdyn
