#pragma once

/**
 * @file polyring.hpp
 * @brief Sparse multivariate polynomials over Q in the fixed ambient variables
 * (c, d, x, y, z, n, u), with exact division, specialization and resultants.
 */

#include "repdyn/exact.hpp"
#include "repdyn/upoly.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace repdyn {

enum class Var : std::uint8_t { c = 0, d, x, y, z, n, u };

inline constexpr std::size_t kNumVars = 7;
inline constexpr std::array<char, kNumVars> kVarNames{'c', 'd', 'x', 'y', 'z', 'n', 'u'};

inline constexpr std::size_t index_of(Var v) { return static_cast<std::size_t>(v); }
inline constexpr char name_of(Var v) { return kVarNames[index_of(v)]; }

inline std::optional<Var> var_from_name(char ch) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (kVarNames[i] == ch) return static_cast<Var>(i);
  return std::nullopt;
}

/// Bit set of variables, bit i for the i-th ambient variable.
using VarMask = std::uint8_t;
inline constexpr VarMask mask_of(Var v) { return static_cast<VarMask>(1u << index_of(v)); }
inline constexpr VarMask mask_of(std::initializer_list<Var> vs) {
  VarMask m = 0;
  for (Var v : vs) m = static_cast<VarMask>(m | mask_of(v));
  return m;
}

using Exponents = std::array<std::uint16_t, kNumVars>;

inline unsigned total_degree(const Exponents& e) {
  unsigned s = 0;
  for (auto k : e) s += k;
  return s;
}

/// Graded lexicographic order with c > d > x > y > z > n > u.
inline bool grlex_greater(const Exponents& a, const Exponents& b) {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_greater(a, b); }
};

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto k : e) h = (h ^ k) * 0x100000001b3ull;
    return static_cast<std::size_t>(h);
  }
};

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const unsigned s = unsigned(a[i]) + b[i];
    if (s > 0xffffu) throw std::overflow_error("MPoly: exponent overflow");
    r[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

inline Exponents operator-(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kNumVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}

struct Term {
  Exponents exp{};
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Binding {
  Var var;
  Rational value;
};

class MPoly {
 public:
  MPoly() = default;
  MPoly(const Rational& a) {  // NOLINT(google-explicit-constructor)
    if (!a.is_zero()) terms_.push_back(Term{Exponents{}, a});
  }
  MPoly(long a) : MPoly(Rational(a)) {}  // NOLINT(google-explicit-constructor)
  MPoly(int a) : MPoly(Rational(a)) {}   // NOLINT(google-explicit-constructor)

  static MPoly variable(Var v) {
    Exponents e{};
    e[index_of(v)] = 1;
    return monomial(e, Rational(1));
  }
  static MPoly monomial(const Exponents& e, const Rational& a) {
    MPoly p;
    if (!a.is_zero()) p.terms_.push_back(Term{e, a});
    return p;
  }
  /// Takes arbitrary (exponent, coefficient) pairs; duplicates are summed.
  static MPoly from_terms(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.exp, b.exp); });
    MPoly p;
    for (auto& t : raw) {
      if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
        p.terms_.back().coeff += t.coeff;
        if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      } else if (!t.coeff.is_zero()) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }
  static MPoly from_upoly(const UPoly& f, Var v) {
    std::vector<Term> t;
    for (int k = 0; k <= f.degree(); ++k) {
      if (f.coeff(k).is_zero()) continue;
      Exponents e{};
      e[index_of(v)] = static_cast<std::uint16_t>(k);
      t.push_back(Term{e, f.coeff(k)});
    }
    return from_terms(std::move(t));
  }

  /// Parses expressions over the ambient variables with + - * ^, rational
  /// literals and parentheses, e.g. "c^2*x^2 + c*x + c*d*y^2 + 1".
  static MPoly parse(std::string_view text);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && repdyn::total_degree(terms_[0].exp) == 0); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading_term() const {
    if (terms_.empty()) throw std::domain_error("MPoly: leading term of zero");
    return terms_.front();
  }
  Rational constant_term() const {
    if (!terms_.empty() && repdyn::total_degree(terms_.back().exp) == 0) return terms_.back().coeff;
    return Rational(0);
  }

  VarMask variables() const {
    VarMask m = 0;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < kNumVars; ++i)
        if (t.exp[i]) m = static_cast<VarMask>(m | (1u << i));
    return m;
  }
  bool uses(Var v) const { return (variables() & mask_of(v)) != 0; }

  int degree(Var v) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.exp[index_of(v)]);
    return d;
  }
  int total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(repdyn::total_degree(terms_.front().exp));
  }
  /// Total degree counting only the variables in `mask`.
  int total_degree_in(VarMask mask) const {
    if (terms_.empty()) return -1;
    int best = 0;
    for (const auto& t : terms_) {
      int s = 0;
      for (std::size_t i = 0; i < kNumVars; ++i)
        if (mask & (1u << i)) s += t.exp[i];
      best = std::max(best, s);
    }
    return best;
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const Rational& s) const {
    if (s.is_zero()) return {};
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff *= s;
    return r;
  }
  MPoly shifted(const Exponents& e) const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.exp = t.exp + e;
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  /// Substitutes rationals for some variables.
  MPoly specialize(const std::vector<Binding>& bindings) const;

  /// Value when every variable is bound; throws if any variable remains.
  Rational evaluate(const std::vector<Binding>& bindings) const {
    MPoly r = specialize(bindings);
    if (!r.is_constant()) throw std::invalid_argument("MPoly::evaluate: unbound variables remain in " + r.str());
    return r.constant_term();
  }

  /// Coefficients with respect to v: result[k] multiplies v^k.
  std::vector<MPoly> coefficients_in(Var v) const {
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(degree(v), 0)) + 1);
    const auto iv = index_of(v);
    for (const auto& t : terms_) {
      Term s = t;
      s.exp[iv] = 0;
      buckets[t.exp[iv]].push_back(std::move(s));
    }
    std::vector<MPoly> out;
    out.reserve(buckets.size());
    // Removing one variable preserves the relative grlex order within a bucket
    // only up to ties in total degree, so re-sort.
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
  }

  /// Rewrites v := value.
  MPoly substitute(Var v, const MPoly& value) const {
    auto cs = coefficients_in(v);
    MPoly acc;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * value + *it;
    return acc;
  }

  /// Univariate view; throws if any variable other than v occurs.
  UPoly to_upoly(Var v) const {
    if (variables() & static_cast<VarMask>(~mask_of(v)))
      throw std::invalid_argument("MPoly::to_upoly: polynomial is not univariate in " + std::string(1, name_of(v)));
    std::vector<Rational> c(static_cast<std::size_t>(std::max(degree(v), 0)) + 1);
    for (const auto& t : terms_) c[t.exp[index_of(v)]] = t.coeff;
    return UPoly(std::move(c));
  }

  /// Denominator lcm and numerator gcd, as one positive rational.
  Rational content() const {
    if (terms_.empty()) return Rational(0);
    Integer g = 0, l = 1;
    for (const auto& t : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.num().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.den().get_mpz_t());
    }
    return Rational::normalize(g, l);
  }
  /// Integer coefficients with gcd 1 and positive leading coefficient.
  MPoly primitive() const {
    if (terms_.empty()) return {};
    Rational s = Rational(1) / content();
    if (terms_.front().coeff.sign() < 0) s = -s;
    return scaled(s);
  }
  bool has_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff.is_integer(); });
  }

  std::string str() const;

 private:
  static MPoly merge(const MPoly& a, const MPoly& b, bool negate_b) {
    MPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    auto push_b = [&](const Term& t) {
      r.terms_.push_back(t);
      if (negate_b) r.terms_.back().coeff = -r.terms_.back().coeff;
    };
    while (i < a.terms_.size() && j < b.terms_.size()) {
      const auto& ta = a.terms_[i];
      const auto& tb = b.terms_[j];
      if (ta.exp == tb.exp) {
        Rational s = negate_b ? ta.coeff - tb.coeff : ta.coeff + tb.coeff;
        if (!s.is_zero()) r.terms_.push_back(Term{ta.exp, std::move(s)});
        ++i;
        ++j;
      } else if (grlex_greater(ta.exp, tb.exp)) {
        r.terms_.push_back(ta);
        ++i;
      } else {
        push_b(tb);
        ++j;
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) push_b(b.terms_[j]);
    return r;
  }

  std::vector<Term> terms_;
};

inline MPoly var(Var v) { return MPoly::variable(v); }

inline MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const MPoly& small = a.size() <= b.size() ? a : b;
  const MPoly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) {
    // Multiplying by a monomial preserves the order.
    const Term& m = small.terms_[0];
    MPoly r;
    r.terms_.reserve(large.size());
    for (const auto& t : large.terms_) r.terms_.push_back(Term{t.exp + m.exp, t.coeff * m.coeff});
    return r;
  }
  std::unordered_map<Exponents, Rational, ExponentsHash> acc;
  acc.reserve(small.size() * large.size() / 2 + 16);
  for (const auto& s : small.terms_)
    for (const auto& t : large.terms_) acc[s.exp + t.exp] += s.coeff * t.coeff;
  std::vector<Term> raw;
  raw.reserve(acc.size());
  for (auto& [e, q] : acc)
    if (!q.is_zero()) raw.push_back(Term{e, std::move(q)});
  return MPoly::from_terms(std::move(raw));
}

inline MPoly pow(MPoly base, unsigned e) {
  MPoly r(1);
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

inline MPoly MPoly::specialize(const std::vector<Binding>& bindings) const {
  if (bindings.empty() || terms_.empty()) return *this;
  std::array<std::optional<Rational>, kNumVars> val;
  for (const auto& b : bindings) val[index_of(b.var)] = b.value;
  std::array<std::vector<Rational>, kNumVars> powers;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (!val[i]) continue;
    int dmax = degree(static_cast<Var>(i));
    powers[i].reserve(static_cast<std::size_t>(dmax) + 1);
    powers[i].emplace_back(1);
    for (int k = 1; k <= dmax; ++k) powers[i].push_back(powers[i].back() * *val[i]);
  }
  std::unordered_map<Exponents, Rational, ExponentsHash> acc;
  for (const auto& t : terms_) {
    Rational q = t.coeff;
    Exponents e = t.exp;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (!val[i] || e[i] == 0) continue;
      q *= powers[i][e[i]];
      e[i] = 0;
    }
    if (!q.is_zero()) acc[e] += q;
  }
  std::vector<Term> raw;
  raw.reserve(acc.size());
  for (auto& [e, q] : acc)
    if (!q.is_zero()) raw.push_back(Term{e, std::move(q)});
  return from_terms(std::move(raw));
}

inline std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.coeff.sign() < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(t.coeff);
    const bool unit = mag == Rational(1);
    bool wrote = false;
    if (!unit || repdyn::total_degree(t.exp) == 0) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (t.exp[i] == 0) continue;
      if (wrote) os << "*";
      os << kVarNames[i];
      if (t.exp[i] > 1) os << "^" << t.exp[i];
      wrote = true;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  MPoly run() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("MPoly::parse: " + what + " at offset " + std::to_string(pos_) + " in '" +
                                std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)), 10);
  }
  MPoly expr() {
    MPoly acc;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    acc = neg ? -term() : term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  MPoly term() {
    MPoly acc = power();
    for (;;) {
      if (eat('*')) {
        acc *= power();
      } else if (eat('/')) {
        MPoly den = power();
        if (!den.is_constant() || den.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(Rational(1) / den.constant_term());
      } else {
        return acc;
      }
    }
  }
  MPoly power() {
    MPoly base = atom();
    if (eat('^')) {
      Integer e = integer();
      if (!e.fits_uint_p()) fail("exponent too large");
      return pow(base, static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }
  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (ch == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return MPoly(Rational(integer()));
    if (auto v = var_from_name(ch)) {
      ++pos_;
      return MPoly::variable(*v);
    }
    fail(std::string("unknown symbol '") + ch + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MPoly MPoly::parse(std::string_view text) { return detail::PolyParser(text).run(); }

// ---------------------------------------------------------------------------
// Exact division
// ---------------------------------------------------------------------------

class InexactDivision : public std::domain_error {
 public:
  explicit InexactDivision(MPoly remainder)
      : std::domain_error("MPoly: inexact division, remainder " + abbreviate(remainder.str())),
        remainder_(std::move(remainder)) {}
  const MPoly& remainder() const { return remainder_; }

 private:
  static std::string abbreviate(std::string s) {
    if (s.size() > 200) s = s.substr(0, 200) + " ...";
    return s;
  }
  MPoly remainder_;
};

struct MDivision {
  MPoly quotient;
  MPoly remainder;
};

namespace detail {

/// Multivariate division by a single divisor in grlex order. When
/// `stop_early` is set, gives up as soon as a remainder term appears.
inline std::optional<MDivision> divide(const MPoly& p, const MPoly& q, bool stop_early) {
  if (q.is_zero()) throw std::domain_error("MPoly: division by zero polynomial");
  const Term& lq = q.leading_term();
  const Rational inv = Rational(1) / lq.coeff;
  std::map<Exponents, Rational, GrlexGreater> work;
  for (const auto& t : p.terms()) work.emplace(t.exp, t.coeff);
  std::vector<Term> quo, rem;
  while (!work.empty()) {
    auto it = work.begin();
    if (!divides(lq.exp, it->first)) {
      if (stop_early) return std::nullopt;
      rem.push_back(Term{it->first, it->second});
      work.erase(it);
      continue;
    }
    const Exponents e = it->first - lq.exp;
    const Rational a = it->second * inv;
    work.erase(it);
    for (std::size_t k = 1; k < q.terms().size(); ++k) {
      const Term& t = q.terms()[k];
      auto [pos, inserted] = work.try_emplace(t.exp + e, Rational(0));
      pos->second -= a * t.coeff;
      if (pos->second.is_zero()) work.erase(pos);
    }
    quo.push_back(Term{e, a});
  }
  return MDivision{MPoly::from_terms(std::move(quo)), MPoly::from_terms(std::move(rem))};
}

}  // namespace detail

inline MDivision divide_with_remainder(const MPoly& p, const MPoly& q) { return *detail::divide(p, q, false); }

/// Quotient p/q when q divides p exactly; nullopt otherwise.
inline std::optional<MPoly> try_exact_div(const MPoly& p, const MPoly& q) {
  auto r = detail::divide(p, q, true);
  if (!r) return std::nullopt;
  return std::move(r->quotient);
}

/// Quotient p/q; throws InexactDivision carrying the remainder otherwise.
inline MPoly exact_div(const MPoly& p, const MPoly& q) {
  auto r = detail::divide(p, q, false);
  if (!r->remainder.is_zero()) throw InexactDivision(std::move(r->remainder));
  return std::move(r->quotient);
}

/// True when p = s*q for some nonzero rational s.
inline bool proportional(const MPoly& p, const MPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return p.primitive() == q.primitive();
}

// ---------------------------------------------------------------------------
// Determinants and resultants
// ---------------------------------------------------------------------------

/// Fraction-free Gaussian elimination (Bareiss) over the integers.
inline Integer det_bareiss(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : Integer(-a[n - 1][n - 1]);
}

/// Bareiss over polynomial entries, every intermediate division exact.
inline MPoly det_bareiss(std::vector<std::vector<MPoly>> a) {
  const std::size_t n = a.size();
  if (n == 0) return MPoly(1);
  MPoly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return MPoly();
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = prev.is_constant() ? v.scaled(Rational(1) / prev.constant_term()) : exact_div(v, prev);
      }
      a[i][k] = MPoly();
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

namespace detail {

/// Sylvester matrix of coefficient lists (index = power), formal degrees.
template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& pc, const std::vector<T>& qc) {
  const std::size_t m = pc.size() - 1, n = qc.size() - 1, s = m + n;
  std::vector<std::vector<T>> mat(s, std::vector<T>(s, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) mat[i][i + j] = pc[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) mat[n + i][i + j] = qc[n - j];
  return mat;
}

inline Integer lcm_denominators(const MPoly& p) {
  Integer l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.den().get_mpz_t());
  return l;
}

inline Integer eval_integer(const std::vector<std::pair<unsigned, Integer>>& terms, const Integer& w) {
  // terms sorted by descending power; Horner with gaps.
  Integer acc = 0;
  unsigned cur = terms.empty() ? 0 : terms.front().first;
  for (const auto& [k, a] : terms) {
    while (cur > k) {
      acc *= w;
      --cur;
    }
    acc += a;
  }
  while (cur > 0) {
    acc *= w;
    --cur;
  }
  return acc;
}

/// Resultant when the coefficients involve a single other variable w:
/// evaluate at integer points, take integer determinants, interpolate.
inline MPoly resultant_by_interpolation(const std::vector<MPoly>& pc, const std::vector<MPoly>& qc, Var w,
                                        int degree_bound) {
  auto integer_terms = [&](const MPoly& c) {
    std::vector<std::pair<unsigned, Integer>> out;
    for (const auto& t : c.terms()) out.emplace_back(t.exp[index_of(w)], t.coeff.num());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
  };
  std::vector<std::vector<std::pair<unsigned, Integer>>> pt, qt;
  for (const auto& c : pc) pt.push_back(integer_terms(c));
  for (const auto& c : qc) qt.push_back(integer_terms(c));

  const int npts = degree_bound + 1;
  std::vector<Integer> xs, ys;
  xs.reserve(static_cast<std::size_t>(npts));
  for (int i = 0; i < npts; ++i) xs.emplace_back((i % 2 == 0) ? i / 2 : -(i + 1) / 2);
  for (const auto& w0 : xs) {
    std::vector<Integer> pv, qv;
    for (const auto& t : pt) pv.push_back(eval_integer(t, w0));
    for (const auto& t : qt) qv.push_back(eval_integer(t, w0));
    ys.push_back(det_bareiss(sylvester(pv, qv)));
  }
  // Newton divided differences; exact because the nodes and values are
  // integers of an integer polynomial.
  std::vector<Integer> dd = ys;
  for (int k = 1; k < npts; ++k)
    for (int i = npts - 1; i >= k; --i) {
      Integer num = dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)];
      Integer den = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - k)];
      mpz_divexact(dd[static_cast<std::size_t>(i)].get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  std::vector<Integer> coef{dd.back()};
  for (int k = npts - 2; k >= 0; --k) {
    // coef := coef * (w - xs[k]) + dd[k]
    std::vector<Integer> next(coef.size() + 1, Integer(0));
    for (std::size_t i = 0; i < coef.size(); ++i) {
      next[i + 1] += coef[i];
      next[i] -= coef[i] * xs[static_cast<std::size_t>(k)];
    }
    next[0] += dd[static_cast<std::size_t>(k)];
    coef = std::move(next);
  }
  return MPoly::from_upoly(UPoly::from_integers(coef), w);
}

}  // namespace detail

/**
 * Resultant of p and q with respect to v: the determinant of the Sylvester
 * matrix built from the formal v-degrees of p and q.
 */
inline MPoly resultant(const MPoly& p, const MPoly& q, Var v) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant: zero input");
  const int m = p.degree(v), n = q.degree(v);
  if (m == 0) return pow(p, static_cast<unsigned>(n));
  if (n == 0) return pow(q, static_cast<unsigned>(m));

  const Integer lp = detail::lcm_denominators(p), lq = detail::lcm_denominators(q);
  const MPoly pi = p.scaled(Rational(lp)), qi = q.scaled(Rational(lq));
  // Res(lp*p, lq*q) = lp^n * lq^m * Res(p, q).
  const Rational unscale = Rational(1) / (pow(Rational(lp), static_cast<unsigned>(n)) *
                                         pow(Rational(lq), static_cast<unsigned>(m)));
  const auto pc = pi.coefficients_in(v), qc = qi.coefficients_in(v);
  const VarMask others = static_cast<VarMask>((p.variables() | q.variables()) & ~mask_of(v));

  if (others == 0) {
    std::vector<Integer> pv, qv;
    for (const auto& c : pc) pv.push_back(c.constant_term().num());
    for (const auto& c : qc) qv.push_back(c.constant_term().num());
    return MPoly(Rational(det_bareiss(detail::sylvester(pv, qv))) * unscale);
  }
  if ((others & (others - 1)) == 0) {
    Var w = Var::c;
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (others & (1u << i)) w = static_cast<Var>(i);
    const VarMask both = static_cast<VarMask>(mask_of(v) | mask_of(w));
    int dpw = 0, dqw = 0;
    for (const auto& c : pc) dpw = std::max(dpw, c.degree(w));
    for (const auto& c : qc) dqw = std::max(dqw, c.degree(w));
    const int bound = std::min(n * dpw + m * dqw, pi.total_degree_in(both) * qi.total_degree_in(both));
    return detail::resultant_by_interpolation(pc, qc, w, bound).scaled(unscale);
  }
  return det_bareiss(detail::sylvester(pc, qc)).scaled(unscale);
}

}  // namespace repdyn
