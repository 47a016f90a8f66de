#pragma once

/**
 * @file upoly.hpp
 * @brief Dense univariate polynomials over Q, real-root isolation, rational
 * roots and the quartic factorization-shape classifier.
 */

#include "repdyn/exact.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace repdyn {

/// Dense polynomial a_0 + a_1 t + ... + a_n t^n; no trailing zero coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static UPoly constant(const Rational& a) { return UPoly(std::vector<Rational>{a}); }
  static UPoly monomial(const Rational& a, int k) {
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
    v.back() = a;
    return UPoly(std::move(v));
  }
  /// Builds from integer coefficients listed from the highest power down.
  static UPoly from_high(std::initializer_list<long> hi) {
    std::vector<Rational> v;
    for (auto it = std::rbegin(hi); it != std::rend(hi); ++it) v.emplace_back(*it);
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : Rational(0);
  }
  const Rational& lead() const {
    if (c_.empty()) throw std::domain_error("UPoly::lead of zero polynomial");
    return c_.back();
  }

  template <class S>
  S eval_as(const S& t, const S& one) const {
    S acc = one * Rational(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + one * (*it);
    return acc;
  }
  Rational operator()(const Rational& t) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i < a.c_.size()) v[i] += a.c_[i];
      if (i < b.c_.size()) v[i] += b.c_[i];
    }
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(v));
  }
  friend UPoly operator*(const Rational& s, const UPoly& p) {
    if (s.is_zero()) return {};
    UPoly r = p;
    for (auto& a : r.c_) a *= s;
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly derivative() const {
    std::vector<Rational> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Rational(static_cast<long>(i)));
    return UPoly(std::move(v));
  }

  UPoly monic() const {
    if (is_zero()) return {};
    return (Rational(1) / lead()) * (*this);
  }

  /// p(a*t + b).
  UPoly compose_affine(const Rational& a, const Rational& b) const {
    UPoly lin{b, a};
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
  }

  /// t^deg * p(1/t) as a polynomial in t (coefficient reversal).
  UPoly reversed() const {
    std::vector<Rational> v(c_.rbegin(), c_.rend());
    return UPoly(std::move(v));
  }

  /// Integer coefficients of the primitive associate with positive leading coefficient.
  std::vector<Integer> primitive_integer() const {
    std::vector<Integer> out;
    if (is_zero()) return out;
    Integer l = 1;
    for (const auto& a : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.den().get_mpz_t());
    Integer g = 0;
    out.reserve(c_.size());
    for (const auto& a : c_) {
      Integer v = a.num() * (l / a.den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      out.push_back(std::move(v));
    }
    if (sgn(out.back()) < 0) g = -g;
    for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return out;
  }

  static UPoly from_integers(const std::vector<Integer>& v) {
    std::vector<Rational> r;
    r.reserve(v.size());
    for (const auto& a : v) r.emplace_back(a);
    return UPoly(std::move(r));
  }

  std::string str(char var = 'y') const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct UDivision {
  UPoly quotient;
  UPoly remainder;
};

inline UDivision divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational inv = Rational(1) / b.lead();
  for (int k = a.degree(); k >= db; --k) {
    const Rational t = rem[static_cast<std::size_t>(k)] * inv;
    if (t.is_zero()) continue;
    quo[static_cast<std::size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= t * b.coeff(j);
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

/// Monic gcd (zero when both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const UPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

inline UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  UPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient;
}

/// Exact quotient; throws std::domain_error when b does not divide a.
inline UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("UPoly: inexact division");
  return q;
}

/// True when p = s*q for some nonzero rational s.
inline bool proportional(const UPoly& p, const UPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  if (p.degree() != q.degree()) return false;
  return p.monic() == q.monic();
}

inline std::string UPoly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[static_cast<std::size_t>(k)];
    if (a.is_zero()) continue;
    Rational mag = abs(a);
    if (first) {
      if (a.sign() < 0) os << "-";
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != Rational(1)) os << mag << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Real-root isolation (Sturm sequences)
// ---------------------------------------------------------------------------

class SturmChain {
 public:
  /// p must be squarefree and nonconstant.
  explicit SturmChain(const UPoly& p) {
    seq_.push_back(p);
    seq_.push_back(p.derivative());
    while (seq_.back().degree() > 0) {
      UPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).remainder;
      if (r.is_zero()) break;
      seq_.push_back(-r);
    }
  }

  int sign_changes(const Rational& t) const {
    int changes = 0, prev = 0;
    for (const auto& q : seq_) {
      int s = q(t).sign();
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  }

  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count(const Rational& lo, const Rational& hi) const { return sign_changes(lo) - sign_changes(hi); }

  const UPoly& poly() const { return seq_.front(); }

 private:
  std::vector<UPoly> seq_;
};

/// Cauchy bound: every complex root has |root| < bound.
inline Rational cauchy_bound(const UPoly& p) {
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeff(k) / p.lead());
    if (r > m) m = r;
  }
  return m + Rational(1);
}

/// Disjoint half-open intervals (lo, hi], each containing exactly one real
/// root of the squarefree polynomial p, of width at most `width`.
inline std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p,
                                                                     const Rational& width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() <= 0) return out;
  SturmChain chain(p);
  const Rational b = cauchy_bound(p);
  std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = chain.count(lo, hi);
    if (n == 0) continue;
    if (n == 1 && hi - lo <= width) {
      out.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / Rational(2);
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Rational roots
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::array<unsigned long, 16> kFilterPrimes{
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179};

/// True when the integer polynomial (low-to-high coefficients) has a root mod p.
inline bool has_root_mod(const std::vector<Integer>& a, unsigned long p) {
  std::vector<unsigned long> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  for (unsigned long t = 0; t < p; ++t) {
    unsigned long acc = 0;
    for (auto it = r.rbegin(); it != r.rend(); ++it) acc = (acc * t + *it) % p;
    if (acc == 0) return true;
  }
  return false;
}

/// Sign of the integer polynomial a (low to high) at t, computed as the sign of
/// den(t)^n a(t) with integer Horner steps only.
inline int sign_at(const std::vector<Integer>& a, const Rational& t) {
  const std::size_t n = a.size() - 1;
  Integer acc = a[n], dpow = 1;
  for (std::size_t i = n; i-- > 0;) {
    dpow *= t.den();
    acc = acc * t.num() + a[i] * dpow;
  }
  return sgn(acc);
}

/// Returns false when some prime not dividing the leading coefficient shows
/// the polynomial has no root mod p, which rules out rational roots.
inline bool may_have_rational_root(const std::vector<Integer>& a) {
  for (unsigned long p : kFilterPrimes) {
    if (mpz_divisible_ui_p(a.back().get_mpz_t(), p)) continue;
    if (!has_root_mod(a, p)) return false;
  }
  return true;
}

}  // namespace detail

/**
 * Rational roots of a nonzero univariate polynomial.
 *
 * After clearing denominators to a primitive integer polynomial with leading
 * coefficient a_n, a root r/s in lowest terms has s | a_n, so a_n * root is
 * an integer. Real roots are isolated by Sturm bisection until the interval
 * scaled by a_n has length below one; the integer candidates inside are then
 * verified exactly. A cheap modular test short-circuits the common rootless
 * case.
 */
inline std::vector<Rational> rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
  std::vector<Rational> roots;
  if (p.degree() == 0) return roots;
  UPoly q = p;
  if (q.coeff(0).is_zero()) {
    roots.emplace_back(0);
    int k = 0;
    while (q.coeff(k).is_zero()) ++k;
    std::vector<Rational> v(q.coeffs().begin() + k, q.coeffs().end());
    q = UPoly(std::move(v));
  }
  if (q.degree() == 0) return roots;
  if (q.degree() == 1) {
    roots.push_back(-q.coeff(0) / q.coeff(1));
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  const auto ints = q.primitive_integer();
  if (!detail::may_have_rational_root(ints)) return roots;

  const UPoly sf = squarefree_part(UPoly::from_integers(ints));
  const Integer an = ints.back();
  const Rational width = Rational::normalize(1, 2 * an);
  const UPoly iq = UPoly::from_integers(ints);
  // Sturm isolation to one root per interval, then plain sign bisection, which
  // only needs one evaluation per step.
  const auto sf_ints = sf.primitive_integer();
  for (auto [lo, hi] : isolate_real_roots(sf, cauchy_bound(sf) * Rational(4))) {
    const int s_hi = detail::sign_at(sf_ints, hi);
    if (s_hi == 0) {
      roots.push_back(hi);
      continue;
    }
    bool exact = false;
    while (hi - lo > width) {
      const Rational mid = (lo + hi) / Rational(2);
      const int s = detail::sign_at(sf_ints, mid);
      if (s == 0) {
        roots.push_back(mid);
        exact = true;
        break;
      }
      if (s == s_hi) hi = mid;
      else lo = mid;
    }
    if (exact) continue;
    // a_n * root lies in (a_n*lo, a_n*hi], an interval of length <= 1/2.
    Rational slo = lo * Rational(an), shi = hi * Rational(an);
    Integer z;
    mpz_cdiv_q(z.get_mpz_t(), slo.num().get_mpz_t(), slo.den().get_mpz_t());
    for (; Rational(z) <= shi; z += 1) {
      Rational cand = Rational::normalize(z, an);
      if (cand > lo && iq(cand).is_zero()) roots.push_back(cand);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// Quartic factorization shape
// ---------------------------------------------------------------------------

/// Multiset of degrees of the Q-irreducible factors of a quartic, ascending.
struct FactorShape {
  std::vector<int> degrees;

  static FactorShape of(std::initializer_list<int> d) {
    FactorShape s{std::vector<int>(d)};
    std::sort(s.degrees.begin(), s.degrees.end());
    return s;
  }
  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(degrees[i]);
    }
    return out + ")";
  }
  friend bool operator==(const FactorShape&, const FactorShape&) = default;
};

struct QuarticSplit {
  FactorShape shape;
  /// Q-irreducible monic factors whose product is the monic input.
  std::vector<UPoly> factors;
};

namespace detail {

/// Splits a monic rootless quartic into two rational quadratics when possible.
inline std::optional<std::pair<UPoly, UPoly>> split_quadratics(const UPoly& monic4) {
  // Depress: t = u - a3/4.
  const Rational shift = -monic4.coeff(3) / Rational(4);
  const UPoly dep = monic4.compose_affine(Rational(1), shift);
  const Rational b2 = dep.coeff(2), b1 = dep.coeff(1), b0 = dep.coeff(0);
  // (u^2 + k u + m)(u^2 - k u + n): m+n = b2+k^2, k(n-m) = b1, mn = b0.
  auto assemble = [&](const Rational& k, const Rational& m, const Rational& n)
      -> std::pair<UPoly, UPoly> {
    UPoly f1{m, k, Rational(1)}, f2{n, -k, Rational(1)};
    // Undo the shift u = t - shift.
    return {f1.compose_affine(Rational(1), -shift), f2.compose_affine(Rational(1), -shift)};
  };
  // K = k^2 is a root of K^3 + 2 b2 K^2 + (b2^2 - 4 b0) K - b1^2.
  UPoly resolvent{-(b1 * b1), b2 * b2 - Rational(4) * b0, Rational(2) * b2, Rational(1)};
  if (!resolvent.is_zero()) {
    for (const auto& K : rational_roots(resolvent)) {
      if (K.sign() <= 0) continue;
      auto k = sqrt_exact(K);
      if (!k) continue;
      const Rational sum = b2 + K;
      const Rational diff = b1 / *k;
      return assemble(*k, (sum - diff) / Rational(2), (sum + diff) / Rational(2));
    }
  }
  if (b1.is_zero()) {
    // k = 0: m, n are the roots of w^2 - b2 w + b0.
    if (auto s = sqrt_exact(b2 * b2 - Rational(4) * b0)) {
      return assemble(Rational(0), (b2 - *s) / Rational(2), (b2 + *s) / Rational(2));
    }
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * Degrees of the Q-irreducible factors of a squarefree quartic, with the
 * factors themselves. Rational roots are split off first; a rootless quartic
 * is tested for a product of two rational quadratics through the resolvent
 * cubic in k^2 of its depressed form.
 */
inline QuarticSplit quartic_factor_shape(const UPoly& p) {
  if (p.degree() != 4) throw std::invalid_argument("quartic_factor_shape: degree must be 4");
  if (!is_squarefree(p)) throw std::invalid_argument("quartic_factor_shape: input is not squarefree");
  UPoly rest = p.monic();
  QuarticSplit out;
  for (const auto& r : rational_roots(p)) {
    UPoly lin{-r, Rational(1)};
    out.factors.push_back(lin);
    rest = exact_quotient(rest, lin);
  }
  const auto nroots = out.factors.size();
  if (nroots == 4) {
    out.shape = FactorShape::of({1, 1, 1, 1});
  } else if (nroots == 2) {
    out.shape = FactorShape::of({1, 1, 2});
    out.factors.push_back(rest);
  } else if (nroots == 1) {
    out.shape = FactorShape::of({1, 3});
    out.factors.push_back(rest);
  } else if (auto split = detail::split_quadratics(rest)) {
    out.shape = FactorShape::of({2, 2});
    out.factors.push_back(split->first);
    out.factors.push_back(split->second);
  } else {
    out.shape = FactorShape::of({4});
    out.factors.push_back(rest);
  }
  return out;
}

}  // namespace repdyn
