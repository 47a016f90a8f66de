#pragma once

/**
 * @file exact.hpp
 * @brief Arbitrary-precision integers and rationals.
 *
 * Rational wraps GMP's mpq_class and keeps it canonical at all times:
 * gcd(|num|, den) = 1 and den > 0. Nothing in this header touches floating
 * point.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace repdyn {

using Integer = mpz_class;

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(long num, long den) : Rational(normalize(Integer(num), Integer(den))) {}

  /// num/den in lowest terms with a positive denominator.
  static Rational normalize(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
  }

  /// Parses "a", "-a", "a/b" (decimal integers, optional surrounding blanks).
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

 private:
  mpq_class v_;
};

/// Naive height of a rational in lowest terms: max(|num|, den).
struct Height {
  Integer value;
  friend bool operator==(const Height& a, const Height& b) { return a.value == b.value; }
  friend bool operator<(const Height& a, const Height& b) { return a.value < b.value; }
  friend bool operator<=(const Height& a, const Height& b) { return a.value <= b.value; }
};

inline Height height(const Rational& q) {
  Integer a = abs(q.num());
  return Height{a > q.den() ? a : q.den()};
}

inline Rational pow(Rational base, unsigned e) {
  Rational r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

/// Exact integer square root, or nullopt when n is not a perfect square.
inline std::optional<Integer> isqrt_exact(const Integer& n) {
  if (sgn(n) < 0) return std::nullopt;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Non-negative rational square root when q is the square of a rational.
inline std::optional<Rational> sqrt_exact(const Rational& q) {
  auto a = isqrt_exact(q.num());
  if (!a) return std::nullopt;
  auto b = isqrt_exact(q.den());
  if (!b) return std::nullopt;
  return Rational::normalize(*a, *b);
}

inline Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::string buf(s);
    if (buf.empty()) throw std::invalid_argument("Rational::parse: empty integer");
    std::size_t i = (buf[0] == '-' || buf[0] == '+') ? 1 : 0;
    if (i == buf.size()) throw std::invalid_argument("Rational::parse: bad integer '" + buf + "'");
    for (std::size_t k = i; k < buf.size(); ++k)
      if (buf[k] < '0' || buf[k] > '9')
        throw std::invalid_argument("Rational::parse: bad integer '" + buf + "'");
    if (buf[0] == '+') buf.erase(0, 1);
    return Integer(buf, 10);
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return normalize(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::size_t hash_value(const Integer& z) {
  std::size_t h = std::hash<long>{}(static_cast<long>(mpz_get_si(z.get_mpz_t())));
  return h ^ (mpz_size(z.get_mpz_t()) * 0x9e3779b97f4a7c15ull);
}

/// Euler's totient by trial division; fine for the small arguments used here.
inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// Moebius function by trial division.
inline int moebius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

/// p-adic valuation of a nonzero integer; returns `cap` for zero.
inline int valuation(const Integer& v, unsigned long p, int cap = 1 << 20) {
  if (v == 0) return cap;
  Integer t = v;
  int k = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++k;
  }
  return k;
}

/**
 * Nonzero rationals a/b in lowest terms with max(|a|, b) <= H, ordered by
 * height, then denominator, then numerator. With integers_only the
 * denominator is fixed to 1.
 */
inline std::vector<Rational> height_grid(long H, bool integers_only = false) {
  if (H < 1) throw std::invalid_argument("height_grid: bound must be positive");
  std::vector<Rational> out;
  for (long h = 1; h <= H; ++h) {
    // Height exactly h: either b = h and |a| <= h, or |a| = h and b < h.
    for (long b = 1; b <= (integers_only ? 1 : h); ++b) {
      for (long a = -h; a <= h; ++a) {
        if (a == 0) continue;
        const long aa = a < 0 ? -a : a;
        if (aa != h && b != h) continue;
        if (std::gcd(aa, b) != 1) continue;
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

}  // namespace repdyn
