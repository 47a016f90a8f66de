#pragma once

/**
 * @file typeclasses.hpp
 * @brief Period-type words over {1..m}, the rotation and letter-permutation
 * actions, canonical class representatives and class enumeration.
 */

#include "repdyn/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace repdyn {

/// Replaced position. For m = 2 the letters 1 and 2 are written L and R.
enum class Side : std::uint8_t { L = 1, R = 2 };

inline char side_char(Side s) { return s == Side::L ? 'L' : 'R'; }
inline Side other(Side s) { return s == Side::L ? Side::R : Side::L; }

class TypeWord {
 public:
  TypeWord() = default;
  TypeWord(int m, std::vector<std::uint8_t> letters) : m_(m), w_(std::move(letters)) {
    if (m_ < 1) throw std::invalid_argument("TypeWord: alphabet size must be positive");
    if (w_.empty()) throw std::invalid_argument("TypeWord: empty word");
    for (auto a : w_)
      if (a < 1 || a > m_) throw std::invalid_argument("TypeWord: letter out of range");
  }
  TypeWord(std::initializer_list<Side> sides) : m_(2) {
    for (Side s : sides) w_.push_back(static_cast<std::uint8_t>(s));
    if (w_.empty()) throw std::invalid_argument("TypeWord: empty word");
  }

  /// Parses "LLRLR" (m = 2, commas and parentheses ignored) or, for m > 2,
  /// a digit string such as "1213".
  static TypeWord parse(std::string_view s, int m = 2) {
    std::vector<std::uint8_t> w;
    for (char ch : s) {
      if (ch == ',' || ch == ' ' || ch == '(' || ch == ')') continue;
      if (ch == 'L' || ch == 'l') w.push_back(1);
      else if (ch == 'R' || ch == 'r') w.push_back(2);
      else if (ch >= '1' && ch <= '9') w.push_back(static_cast<std::uint8_t>(ch - '0'));
      else throw std::invalid_argument("TypeWord::parse: bad letter '" + std::string(1, ch) + "'");
    }
    return TypeWord(m, std::move(w));
  }
  static TypeWord power(Side s, int k) { return TypeWord(2, std::vector<std::uint8_t>(static_cast<std::size_t>(k), static_cast<std::uint8_t>(s))); }

  int m() const { return m_; }
  std::size_t size() const { return w_.size(); }
  const std::vector<std::uint8_t>& letters() const { return w_; }
  Side side(std::size_t i) const {
    if (m_ != 2) throw std::logic_error("TypeWord::side: only defined for m = 2");
    return static_cast<Side>(w_.at(i));
  }

  TypeWord prefix(std::size_t k) const {
    return TypeWord(m_, std::vector<std::uint8_t>(w_.begin(), w_.begin() + static_cast<std::ptrdiff_t>(k)));
  }
  friend TypeWord operator+(const TypeWord& a, const TypeWord& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("TypeWord: alphabet mismatch");
    std::vector<std::uint8_t> w = a.w_;
    w.insert(w.end(), b.w_.begin(), b.w_.end());
    return TypeWord(a.m_, std::move(w));
  }

  bool all_same() const { return std::all_of(w_.begin(), w_.end(), [&](auto a) { return a == w_[0]; }); }

  std::string str() const {
    std::string s;
    for (auto a : w_) s += (m_ == 2) ? (a == 1 ? 'L' : 'R') : static_cast<char>('0' + a);
    return s;
  }
  /// "(L,R,L,R)" style.
  std::string tuple_str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (i) s += ",";
      s += (m_ == 2) ? std::string(1, w_[i] == 1 ? 'L' : 'R') : std::to_string(w_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const TypeWord&, const TypeWord&) = default;
  friend bool operator<(const TypeWord& a, const TypeWord& b) {
    if (a.m_ != b.m_) return a.m_ < b.m_;
    return a.w_ < b.w_;
  }

 private:
  int m_ = 2;
  std::vector<std::uint8_t> w_;
};

/// Moves the last letter to the front.
inline TypeWord rotate(const TypeWord& t) {
  auto w = t.letters();
  std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
  return TypeWord(t.m(), std::move(w));
}

/// Applies a permutation of {1..m}, given as perm[i-1] = image of i.
inline TypeWord permute(const TypeWord& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.m()) throw std::invalid_argument("permute: wrong permutation size");
  std::vector<int> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 1 || p > t.m() || seen[static_cast<std::size_t>(p - 1)]++) throw std::invalid_argument("permute: not a bijection");
  }
  auto w = t.letters();
  for (auto& a : w) a = static_cast<std::uint8_t>(perm[a - 1u]);
  return TypeWord(t.m(), std::move(w));
}

/// Letter swap L <-> R.
inline TypeWord swapped(const TypeWord& t) {
  if (t.m() != 2) throw std::logic_error("swapped: only defined for m = 2");
  return permute(t, {2, 1});
}

struct TypeClass {
  TypeWord canonical;
  friend bool operator==(const TypeClass&, const TypeClass&) = default;
  friend bool operator<(const TypeClass& a, const TypeClass& b) { return a.canonical < b.canonical; }
};

/// Lexicographic minimum over all rotations and letter permutations.
inline TypeClass canonical(const TypeWord& t) {
  std::vector<int> perm(static_cast<std::size_t>(t.m()));
  std::iota(perm.begin(), perm.end(), 1);
  TypeWord best = t;
  do {
    TypeWord w = permute(t, perm);
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (w < best) best = w;
      w = rotate(w);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return TypeClass{best};
}

/// All classes of words of length N over {1..m}, sorted by representative.
inline std::vector<TypeClass> enumerate_classes(int N, int m) {
  if (N < 1 || m < 1) throw std::invalid_argument("enumerate_classes: N and m must be positive");
  double words = 1;
  for (int i = 0; i < N; ++i) words *= m;
  if (words > double(1 << 24)) throw std::invalid_argument("enumerate_classes: m^N exceeds 2^24");
  std::set<TypeClass> classes;
  std::vector<std::uint8_t> w(static_cast<std::size_t>(N), 1);
  for (;;) {
    classes.insert(canonical(TypeWord(m, w)));
    int i = N - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == m) w[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return {classes.begin(), classes.end()};
}

/// Number of binary classes: sum over d | N of phi(2d) 2^(N/d), divided by 2N.
inline Integer count_classes_binary(int N) {
  if (N < 1) throw std::invalid_argument("count_classes_binary: N must be positive");
  Integer total = 0;
  for (int d = 1; d <= N; ++d) {
    if (N % d) continue;
    Integer p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(N / d));
    total += Integer(static_cast<unsigned long>(euler_phi(2ull * static_cast<unsigned>(d)))) * p2;
  }
  Integer q;
  mpz_divexact_ui(q.get_mpz_t(), total.get_mpz_t(), 2ul * static_cast<unsigned long>(N));
  return q;
}

/// Largest N' with t equivalent to (L^N', R^(N-N')), if any.
inline std::optional<int> is_univariate(const TypeWord& t) {
  if (t.m() != 2) throw std::invalid_argument("is_univariate: requires m = 2");
  const int N = static_cast<int>(t.size());
  const TypeClass c = canonical(t);
  for (int k = N; k >= 1; --k) {
    TypeWord u = TypeWord::power(Side::L, k);
    if (k < N) u = u + TypeWord::power(Side::R, N - k);
    if (canonical(u) == c) return k;
  }
  return std::nullopt;
}

}  // namespace repdyn
