#pragma once

/**
 * @file numberfield.hpp
 * @brief Arithmetic in Q[y]/(m(y)) for squarefree moduli m, plus univariate
 * polynomials over such rings (used to recover coordinates by gcd).
 */

#include "repdyn/exact.hpp"
#include "repdyn/polyring.hpp"
#include "repdyn/upoly.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace repdyn {

class NFModulus;
using ModulusPtr = std::shared_ptr<const NFModulus>;

/// Squarefree modulus. Keeps the primitive integer form for display and the
/// monic form for reduction.
class NFModulus {
 public:
  static ModulusPtr make(const UPoly& m) {
    if (m.degree() < 1) throw std::invalid_argument("NFModulus: degree must be at least 1");
    if (!is_squarefree(m)) throw std::invalid_argument("NFModulus: modulus " + m.str() + " is not squarefree");
    return ModulusPtr(new NFModulus(m));
  }

  int degree() const { return monic_.degree(); }
  const UPoly& monic() const { return monic_; }
  const UPoly& display() const { return display_; }

  friend bool operator==(const NFModulus& a, const NFModulus& b) { return a.monic_ == b.monic_; }

 private:
  explicit NFModulus(const UPoly& m) : display_(UPoly::from_integers(m.primitive_integer())), monic_(m.monic()) {}
  UPoly display_;
  UPoly monic_;
};

/// Thrown by inversion when the element shares a factor with the modulus.
class ZeroDivisor : public std::domain_error {
 public:
  explicit ZeroDivisor(UPoly factor)
      : std::domain_error("NFElem: zero divisor, modulus has factor " + factor.str()), factor_(std::move(factor)) {}
  /// Monic nontrivial common factor of the element and the modulus.
  const UPoly& factor() const { return factor_; }

 private:
  UPoly factor_;
};

class NFElem {
 public:
  NFElem() = default;
  NFElem(ModulusPtr m, const UPoly& rep) : mod_(std::move(m)) {
    if (!mod_) throw std::invalid_argument("NFElem: null modulus");
    rep_ = divmod(rep, mod_->monic()).remainder;
  }
  NFElem(ModulusPtr m, const Rational& a) : NFElem(std::move(m), UPoly::constant(a)) {}

  static NFElem generator(const ModulusPtr& m) { return NFElem(m, UPoly{Rational(0), Rational(1)}); }

  const ModulusPtr& modulus() const { return mod_; }
  const UPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rational coeff(int k) const { return rep_.coeff(k); }

  NFElem operator-() const { return NFElem(mod_, -rep_, Reduced{}); }
  friend NFElem operator+(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    return NFElem(a.mod_, a.rep_ + b.rep_, Reduced{});
  }
  friend NFElem operator-(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    return NFElem(a.mod_, a.rep_ - b.rep_, Reduced{});
  }
  friend NFElem operator*(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    return NFElem(a.mod_, a.rep_ * b.rep_);
  }
  friend NFElem operator*(const Rational& s, const NFElem& a) { return NFElem(a.mod_, s * a.rep_, Reduced{}); }
  friend NFElem operator+(const NFElem& a, const Rational& s) { return NFElem(a.mod_, a.rep_ + UPoly::constant(s), Reduced{}); }
  NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
  NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
  NFElem& operator*=(const NFElem& o) { return *this = *this * o; }

  /// Inverse by the extended Euclidean algorithm; throws ZeroDivisor when the
  /// representative and the modulus have a nonconstant common factor.
  NFElem inverse() const {
    if (is_zero()) throw std::domain_error("NFElem: inverse of zero");
    // Invariant: r_i = s_i * rep (mod m).
    UPoly r0 = mod_->monic(), r1 = rep_;
    UPoly s0, s1 = UPoly::constant(Rational(1));
    while (r1.degree() > 0) {
      auto [q, r] = divmod(r0, r1);
      UPoly s = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r1.is_zero()) throw ZeroDivisor(r0.monic());
    return NFElem(mod_, (Rational(1) / r1.lead()) * s1);
  }
  friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

  friend bool operator==(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    return a.rep_ == b.rep_;
  }
  /// Arbitrary total order on representatives, for use as map keys.
  friend bool operator<(const NFElem& a, const NFElem& b) {
    const auto& x = a.rep_.coeffs();
    const auto& y = b.rep_.coeffs();
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }

  /// Image under y -> r for a rational root r of the modulus.
  Rational at_root(const Rational& r) const {
    if (!mod_->monic()(r).is_zero()) throw std::invalid_argument("NFElem::at_root: not a root of the modulus");
    return rep_(r);
  }

  /// Prints with a common denominator pulled out, e.g. "(-1 + 2*r)/8".
  std::string str(char sym = 'r') const;

 private:
  struct Reduced {};
  NFElem(ModulusPtr m, UPoly rep, Reduced) : mod_(std::move(m)), rep_(std::move(rep)) {}

  static void check_same(const NFElem& a, const NFElem& b) {
    if (a.mod_ != b.mod_ && !(a.mod_ && b.mod_ && *a.mod_ == *b.mod_))
      throw std::invalid_argument("NFElem: modulus mismatch");
  }

  ModulusPtr mod_;
  UPoly rep_;
};

inline std::string NFElem::str(char sym) const {
  if (rep_.is_zero()) return "0";
  if (rep_.degree() == 0) return rep_.coeff(0).str();
  Integer l = 1;
  for (const auto& a : rep_.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.den().get_mpz_t());
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= rep_.degree(); ++k) {
    Rational a = rep_.coeff(k) * Rational(l);
    if (a.is_zero()) continue;
    if (first) {
      if (a.sign() < 0) os << "-";
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
    }
    first = false;
    Rational mag = abs(a);
    if (k == 0) {
      os << mag;
    } else {
      if (mag != Rational(1)) os << mag << "*";
      os << sym;
      if (k > 1) os << "^" << k;
    }
  }
  if (l == 1) return os.str();
  return "(" + os.str() + ")/" + l.get_str();
}

inline std::ostream& operator<<(std::ostream& os, const NFElem& a) { return os << a.str(); }

/// Splits a modulus along a factor found by ZeroDivisor.
inline std::pair<ModulusPtr, ModulusPtr> split_modulus(const NFModulus& m, const UPoly& factor) {
  UPoly cof = exact_quotient(m.monic(), factor.monic());
  return {NFModulus::make(factor), NFModulus::make(cof)};
}

/// Evaluates p(x0, y0) for p in Q[x, y].
inline NFElem nf_eval_bivariate(const MPoly& p, const NFElem& x0, const NFElem& y0) {
  if (p.variables() & static_cast<VarMask>(~mask_of({Var::x, Var::y})))
    throw std::invalid_argument("nf_eval_bivariate: polynomial has variables other than x, y: " + p.str());
  const auto& mod = x0.modulus();
  std::vector<NFElem> xp{NFElem(mod, Rational(1))}, yp{NFElem(mod, Rational(1))};
  for (int k = 1; k <= p.degree(Var::x); ++k) xp.push_back(xp.back() * x0);
  for (int k = 1; k <= p.degree(Var::y); ++k) yp.push_back(yp.back() * y0);
  NFElem acc(mod, Rational(0));
  for (const auto& t : p.terms()) {
    const auto i = t.exp[index_of(Var::x)], j = t.exp[index_of(Var::y)];
    acc += t.coeff * (xp[i] * yp[j]);
  }
  return acc;
}

/// Dense polynomial in one variable with NFElem coefficients (low to high).
class NFPoly {
 public:
  NFPoly(ModulusPtr m, std::vector<NFElem> c) : mod_(std::move(m)), c_(std::move(c)) { trim(); }

  /// Views p in Q[x, y] as a polynomial in `main` with the other variable set to `other_value`.
  static NFPoly from_bivariate(const MPoly& p, Var main, Var other, const NFElem& other_value) {
    const auto& mod = other_value.modulus();
    std::vector<NFElem> op{NFElem(mod, Rational(1))};
    for (int k = 1; k <= p.degree(other); ++k) op.push_back(op.back() * other_value);
    std::vector<NFElem> c(static_cast<std::size_t>(std::max(p.degree(main), 0)) + 1, NFElem(mod, Rational(0)));
    for (const auto& t : p.terms()) {
      for (std::size_t i = 0; i < kNumVars; ++i)
        if (t.exp[i] && i != index_of(main) && i != index_of(other))
          throw std::invalid_argument("NFPoly::from_bivariate: unexpected variable in " + p.str());
      c[t.exp[index_of(main)]] += t.coeff * op[t.exp[index_of(other)]];
    }
    return NFPoly(mod, std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<NFElem>& coeffs() const { return c_; }
  const ModulusPtr& modulus() const { return mod_; }

  NFPoly monic() const {
    NFElem inv = c_.back().inverse();
    std::vector<NFElem> c;
    for (const auto& a : c_) c.push_back(a * inv);
    return NFPoly(mod_, std::move(c));
  }

  /// Remainder of division by b; may throw ZeroDivisor.
  NFPoly remainder(const NFPoly& b) const {
    if (b.is_zero()) throw std::domain_error("NFPoly: division by zero");
    std::vector<NFElem> r = c_;
    const NFElem inv = b.c_.back().inverse();
    const int db = b.degree();
    for (int k = degree(); k >= db; --k) {
      const NFElem t = r[static_cast<std::size_t>(k)] * inv;
      if (t.is_zero()) continue;
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= t * b.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(std::max(db, 0)));
    return NFPoly(mod_, std::move(r));
  }

  NFElem operator()(const NFElem& t) const {
    NFElem acc(mod_, Rational(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  ModulusPtr mod_;
  std::vector<NFElem> c_;
};

/// Monic gcd over the quotient ring; may throw ZeroDivisor when the ring is
/// not a field, in which case the caller splits the modulus and retries.
inline NFPoly gcd(NFPoly a, NFPoly b) {
  while (!b.is_zero()) {
    NFPoly r = a.remainder(b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

}  // namespace repdyn
