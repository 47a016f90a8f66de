#pragma once

/**
 * @file modpoly.hpp
 * @brief Dynamical modular polynomials Phi_{t,L}, Phi_{t,R} in Q[c,d,x,y]
 * for the generic form c x^2 + d y^2.
 */

#include "repdyn/exact.hpp"
#include "repdyn/polyring.hpp"
#include "repdyn/typeclasses.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace repdyn {

inline constexpr std::size_t kMaxSymbolicPeriod = 6;

struct RawIterate {
  MPoly left;   ///< pi_L(f_t(x, y))
  MPoly right;  ///< pi_R(f_t(x, y))
};

/// Phi together with the prefix factors that were divided out of the raw difference.
struct PhiDecomposition {
  MPoly phi;
  std::vector<MPoly> removed;
};

struct ModularPolyPair {
  TypeWord t;
  MPoly phiL;
  MPoly phiR;
};

namespace detail {

template <class V>
class Memo {
 public:
  std::optional<V> get(const std::string& key) {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void put(const std::string& key, const V& v) {
    std::lock_guard lock(mu_);
    map_.emplace(key, v);
  }

 private:
  std::mutex mu_;
  std::map<std::string, V> map_;
};

inline Memo<RawIterate>& raw_memo() {
  static Memo<RawIterate> m;
  return m;
}
inline Memo<PhiDecomposition>& phi_memo() {
  static Memo<PhiDecomposition> m;
  return m;
}

inline void check_symbolic_word(const TypeWord& t) {
  if (t.m() != 2) throw std::invalid_argument("modular polynomials need m = 2");
  if (t.size() > kMaxSymbolicPeriod)
    throw std::invalid_argument("modular polynomials are limited to period " + std::to_string(kMaxSymbolicPeriod));
}

}  // namespace detail

/// (pi_L(f_t), pi_R(f_t)) for f = c x^2 + d y^2, built letter by letter.
inline RawIterate raw_iterate(const TypeWord& t) {
  detail::check_symbolic_word(t);
  const std::string key = t.str();
  if (auto hit = detail::raw_memo().get(key)) return *hit;
  RawIterate r;
  if (t.size() == 1) {
    r = RawIterate{var(Var::x), var(Var::y)};
  } else {
    r = raw_iterate(t.prefix(t.size() - 1));
  }
  const MPoly img = var(Var::c) * (r.left * r.left) + var(Var::d) * (r.right * r.right);
  if (t.side(t.size() - 1) == Side::L) r.left = img;
  else r.right = img;
  detail::raw_memo().put(key, r);
  return r;
}

/// pi_side(f_t) - (x or y).
inline MPoly raw_difference(const TypeWord& t, Side side) {
  const RawIterate r = raw_iterate(t);
  return side == Side::L ? r.left - var(Var::x) : r.right - var(Var::y);
}

/**
 * Phi_{t,side} and the factors removed to obtain it. Starting from the raw
 * difference, each proper prefix t' (shortest first) with a nonzero
 * Phi_{t',side} is divided out as long as it divides exactly and leaves a
 * nonconstant quotient.
 */
inline PhiDecomposition phi_decomposition(const TypeWord& t, Side side) {
  detail::check_symbolic_word(t);
  const std::string key = t.str() + side_char(side);
  if (auto hit = detail::phi_memo().get(key)) return *hit;
  PhiDecomposition out{raw_difference(t, side), {}};
  if (!out.phi.is_zero()) {
    for (std::size_t k = 1; k < t.size(); ++k) {
      const MPoly sub = phi_decomposition(t.prefix(k), side).phi;
      if (sub.is_zero() || sub.is_constant()) continue;
      while (auto q = try_exact_div(out.phi, sub)) {
        if (q->is_constant()) break;
        out.phi = std::move(*q);
        out.removed.push_back(sub);
      }
    }
  }
  detail::phi_memo().put(key, out);
  return out;
}

inline MPoly phi(const TypeWord& t, Side side) { return phi_decomposition(t, side).phi; }

inline ModularPolyPair modular_pair(const TypeWord& t) { return {t, phi(t, Side::L), phi(t, Side::R)}; }

/// Product over m | dvar of (pi_L(f_{L^m}) - x)^mu(dvar/m), by exact division.
inline MPoly phi_moebius_leftpower(int N, int dvar) {
  if (N < 1 || dvar < 1 || N % dvar != 0) throw std::invalid_argument("phi_moebius_leftpower: need dvar | N");
  if (static_cast<std::size_t>(N) > kMaxSymbolicPeriod) throw std::invalid_argument("phi_moebius_leftpower: N too large");
  MPoly num(1), den(1);
  for (int m = 1; m <= dvar; ++m) {
    if (dvar % m) continue;
    const int mu = moebius(static_cast<std::uint64_t>(dvar / m));
    if (mu == 0) continue;
    const MPoly f = raw_difference(TypeWord::power(Side::L, m), Side::L);
    if (mu > 0) num *= f;
    else den *= f;
  }
  return exact_div(num, den);
}

struct DegreeRow {
  TypeWord type;
  bool univariate = false;
  int degL = 0;
  int degR = 0;
};

/// Total degree in (x, y), with 0 for the zero polynomial.
inline int xy_degree(const MPoly& p) { return p.is_zero() ? 0 : p.total_degree_in(mask_of({Var::x, Var::y})); }

inline std::vector<DegreeRow> degree_table(int maxN) {
  if (maxN < 1 || static_cast<std::size_t>(maxN) > kMaxSymbolicPeriod) throw std::invalid_argument("degree_table: bad maxN");
  std::vector<DegreeRow> rows;
  for (int N = 1; N <= maxN; ++N)
    for (const auto& cls : enumerate_classes(N, 2)) {
      const auto& t = cls.canonical;
      rows.push_back({t, is_univariate(t).has_value(), xy_degree(phi(t, Side::L)), xy_degree(phi(t, Side::R))});
    }
  return rows;
}

inline MPoly specialize_phi(const TypeWord& t, Side side, const Rational& C, const Rational& D) {
  if (C.is_zero() || D.is_zero()) throw std::invalid_argument("specialize_phi: C and D must be nonzero");
  return phi(t, side).specialize({{Var::c, C}, {Var::d, D}});
}

}  // namespace repdyn
