#pragma once

/**
 * @file dynamics.hpp
 * @brief Replacement dynamics for f(x, y) = C x^2 + D y^2 over an exact
 * scalar type (Rational or NFElem): single replacements, typed iterates,
 * exact-type periodicity and orbit graphs.
 */

#include "repdyn/exact.hpp"
#include "repdyn/numberfield.hpp"
#include "repdyn/typeclasses.hpp"

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace repdyn {

inline bool is_zero(const Rational& a) { return a.is_zero(); }
inline bool is_zero(const NFElem& a) { return a.is_zero(); }
inline std::string to_string(const Rational& a) { return a.str(); }
inline std::string to_string(const NFElem& a) { return a.str(); }

template <class S>
struct Vec2 {
  S x;
  S y;

  const S& at(Side s) const { return s == Side::L ? x : y; }
  S& at(Side s) { return s == Side::L ? x : y; }

  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    if (a.x < b.x) return true;
    if (b.x < a.x) return false;
    return a.y < b.y;
  }
  std::string str() const { return "(" + to_string(x) + ", " + to_string(y) + ")"; }
};

template <class S>
class Form {
 public:
  Form(S C, S D) : C_(std::move(C)), D_(std::move(D)) {
    if (is_zero(C_) || is_zero(D_)) throw std::invalid_argument("Form: C and D must be nonzero");
  }
  const S& C() const { return C_; }
  const S& D() const { return D_; }
  S operator()(const Vec2<S>& v) const { return C_ * (v.x * v.x) + D_ * (v.y * v.y); }
  /// The form with C and D exchanged.
  Form swapped() const { return Form(D_, C_); }

 private:
  S C_;
  S D_;
};

/// Lifts a rational form into a quotient ring.
inline Form<NFElem> lift(const Form<Rational>& f, const ModulusPtr& m) {
  return Form<NFElem>(NFElem(m, f.C()), NFElem(m, f.D()));
}

template <class S>
Vec2<S> replace_step(const Form<S>& f, const Vec2<S>& v, Side j) {
  Vec2<S> w = v;
  w.at(j) = f(v);
  return w;
}

/// Applies the letters of t from left to right.
template <class S>
Vec2<S> apply_type(const Form<S>& f, Vec2<S> v, const TypeWord& t) {
  for (std::size_t i = 0; i < t.size(); ++i) v = replace_step(f, v, t.side(i));
  return v;
}

/// f_t(v) = v and no proper prefix of t already returns to v.
template <class S>
bool is_periodic_of_type(const Form<S>& f, const Vec2<S>& v, const TypeWord& t) {
  Vec2<S> w = v;
  for (std::size_t i = 0; i < t.size(); ++i) {
    w = replace_step(f, w, t.side(i));
    if (w == v) return i + 1 == t.size();
  }
  return false;
}

template <class S>
struct OrbitGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Side label;
  };
  std::vector<Vec2<S>> vertices;
  std::vector<Edge> edges;
  bool truncated = false;

  std::optional<std::size_t> find(const Vec2<S>& v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == v) return i;
    return std::nullopt;
  }

  /// Follows the labels of t from vertex `start`; nullopt if an edge is missing.
  std::optional<std::size_t> walk(std::size_t start, const TypeWord& t) const {
    std::size_t cur = start;
    for (std::size_t i = 0; i < t.size(); ++i) {
      bool moved = false;
      for (const auto& e : edges)
        if (e.from == cur && e.label == t.side(i)) {
          cur = e.to;
          moved = true;
          break;
        }
      if (!moved) return std::nullopt;
    }
    return cur;
  }

  std::string to_dot(const std::string& name = "orbit") const {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (std::size_t i = 0; i < vertices.size(); ++i)
      os << "  v" << i << " [label=\"" << vertices[i].str() << "\"];\n";
    for (const auto& e : edges)
      os << "  v" << e.from << " -> v" << e.to << " [label=\"" << side_char(e.label) << "\"];\n";
    os << "}\n";
    return os.str();
  }
};

/// Breadth-first closure of v under both replacements, capped at max_vertices.
template <class S>
OrbitGraph<S> orbit_graph(const Form<S>& f, const Vec2<S>& v, std::size_t max_vertices) {
  if (max_vertices < 1) throw std::invalid_argument("orbit_graph: max_vertices must be at least 1");
  OrbitGraph<S> g;
  std::map<Vec2<S>, std::size_t> index;
  std::deque<std::size_t> frontier;
  g.vertices.push_back(v);
  index.emplace(v, 0);
  frontier.push_back(0);
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    for (Side s : {Side::L, Side::R}) {
      Vec2<S> w = replace_step(f, g.vertices[cur], s);
      auto it = index.find(w);
      if (it == index.end()) {
        if (g.vertices.size() >= max_vertices) {
          g.truncated = true;
          continue;
        }
        const std::size_t id = g.vertices.size();
        g.vertices.push_back(w);
        it = index.emplace(std::move(w), id).first;
        frontier.push_back(id);
      }
      g.edges.push_back({cur, it->second, s});
    }
  }
  return g;
}

}  // namespace repdyn
