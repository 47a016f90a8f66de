#pragma once

/**
 * @file sieve.hpp
 * @brief Modular pre-filters for polynomial families in (c, d, y) evaluated
 * at integer pairs. A family passes a prime when its specialization has a
 * root mod p; failing any usable prime proves the absence of rational roots.
 */

#include "repdyn/exact.hpp"
#include "repdyn/polyring.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace repdyn {

inline constexpr std::array<std::uint32_t, 24> kSievePrimes{5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                                            47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};

namespace detail {

inline std::uint32_t mod_of(std::int64_t a, std::uint32_t p) {
  const std::int64_t r = a % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

inline std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1u) r = r * b % p;
    b = b * b % p;
    e >>= 1u;
  }
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return pow_mod(a, p - 2, p); }

/// Whether the polynomial with coefficients v (low to high, already reduced) has a root in F_p.
inline bool has_root_mod(const std::vector<std::uint32_t>& v, std::uint32_t p) {
  for (std::uint32_t t = 0; t < p; ++t) {
    std::uint64_t acc = 0;
    for (std::size_t k = v.size(); k-- > 0;) acc = (acc * t + v[k]) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace detail

/// An MPoly in c, d, y compiled for evaluation at integer (c, d) modulo each sieve prime.
class ModFamily {
 public:
  explicit ModFamily(const MPoly& f) {
    if (f.variables() & ~mask_of({Var::c, Var::d, Var::y}))
      throw std::invalid_argument("ModFamily: only c, d, y may occur");
    for (const auto& t : f.terms()) {
      if (!t.coeff.is_integer()) throw std::invalid_argument("ModFamily: non-integer coefficient");
      Term_ term;
      term.ec = t.exp[index_of(Var::c)];
      term.ed = t.exp[index_of(Var::d)];
      term.ey = t.exp[index_of(Var::y)];
      for (std::size_t i = 0; i < kSievePrimes.size(); ++i)
        term.res[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(t.coeff.num().get_mpz_t(), kSievePrimes[i]));
      degree_ = std::max(degree_, static_cast<int>(term.ey));
      maxc_ = std::max(maxc_, term.ec);
      maxd_ = std::max(maxd_, term.ed);
      terms_.push_back(term);
    }
  }

  int degree() const { return degree_; }

  /// Coefficients in y (low to high) of f(a, b, y) mod the i-th sieve prime.
  std::vector<std::uint32_t> coeffs_mod(std::int64_t a, std::int64_t b, std::size_t i) const {
    const std::uint32_t p = kSievePrimes[i];
    std::vector<std::uint64_t> pa(maxc_ + 1u, 1), pb(maxd_ + 1u, 1);
    const std::uint32_t am = detail::mod_of(a, p), bm = detail::mod_of(b, p);
    for (unsigned k = 1; k <= maxc_; ++k) pa[k] = pa[k - 1] * am % p;
    for (unsigned k = 1; k <= maxd_; ++k) pb[k] = pb[k - 1] * bm % p;
    std::vector<std::uint32_t> out(static_cast<std::size_t>(degree_ + 1), 0);
    for (const auto& t : terms_) {
      const std::uint64_t v = t.res[i] * pa[t.ec] % p * pb[t.ed] % p;
      out[t.ey] = static_cast<std::uint32_t>((out[t.ey] + v) % p);
    }
    return out;
  }

  /// False only if f(a, b, y) provably has no rational root: some prime not
  /// dividing the leading coefficient leaves it rootless mod p.
  bool may_have_rational_root(std::int64_t a, std::int64_t b) const {
    for (std::size_t i = 0; i < kSievePrimes.size(); ++i) {
      const auto v = coeffs_mod(a, b, i);
      if (v.back() == 0) continue;
      if (!detail::has_root_mod(v, kSievePrimes[i])) return false;
    }
    return true;
  }

 private:
  struct Term_ {
    unsigned ec = 0, ed = 0, ey = 0;
    std::array<std::uint32_t, kSievePrimes.size()> res{};
  };
  std::vector<Term_> terms_;
  int degree_ = 0;
  unsigned maxc_ = 0, maxd_ = 0;
};

/**
 * Sieve for the cubic K^3 + 2 b2 K^2 + (b2^2 - 4 b0) K - b1^2 of a depressed
 * quartic whose coefficients are given as numerator/denominator families in
 * (c, d). Its rational roots have denominators supported on primes dividing
 * the denominators, so any other prime where the cubic has no root (or no
 * square root, when squares_only is set) rules out a rational (square) root.
 */
class ResolventSieve {
 public:
  ResolventSieve(const MPoly& n2, const MPoly& d2, const MPoly& n1, const MPoly& d1, const MPoly& n0, const MPoly& d0)
      : f_{ModFamily(n2), ModFamily(d2), ModFamily(n1), ModFamily(d1), ModFamily(n0), ModFamily(d0)} {}

  bool may_have_root(std::int64_t a, std::int64_t b, bool squares_only) const {
    for (std::size_t i = 0; i < kSievePrimes.size(); ++i) {
      const std::uint32_t p = kSievePrimes[i];
      std::array<std::uint64_t, 6> v{};
      bool usable = true;
      for (std::size_t k = 0; k < 6; ++k) {
        v[k] = f_[k].coeffs_mod(a, b, i)[0];
        if (k % 2 == 1 && v[k] == 0) usable = false;
      }
      if (!usable) continue;
      const std::uint64_t b2 = v[0] * detail::inv_mod(static_cast<std::uint32_t>(v[1]), p) % p;
      const std::uint64_t b1 = v[2] * detail::inv_mod(static_cast<std::uint32_t>(v[3]), p) % p;
      const std::uint64_t b0 = v[4] * detail::inv_mod(static_cast<std::uint32_t>(v[5]), p) % p;
      const std::uint64_t c2 = 2 * b2 % p;
      const std::uint64_t c1 = (b2 * b2 % p + 4ull * p - 4 * b0 % p) % p;
      const std::uint64_t c0 = (p - b1 * b1 % p) % p;
      bool found = false;
      for (std::uint64_t t = 0; t < p && !found; ++t) {
        const std::uint64_t val = (((t + c2) % p * t + c1) % p * t + c0) % p;
        if (val != 0) continue;
        if (!squares_only || t == 0 || detail::pow_mod(t, (p - 1) / 2, p) == 1) found = true;
      }
      if (!found) return false;
    }
    return true;
  }

 private:
  std::array<ModFamily, 6> f_;
};

}  // namespace repdyn
