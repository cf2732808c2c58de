#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbasis/companion_basis.hpp"
#include "cbasis/error.hpp"
#include "cbasis/quiver.hpp"
#include "cbasis/root_system.hpp"

namespace cbasis::type_a {

/// Diagonal of the (n+3)-gon joining P_i and P_j, 1-based, i < j.
struct Diagonal {
  int i = 0;
  int j = 0;

  void validate(int n) const {
    const int corners = n + 3;
    if (i < 1 || j > corners || i >= j) throw InvalidArgument("diagonal endpoints out of order or range");
    if (j - i < 2 || (i == 1 && j == corners))
      throw InvalidArgument("(" + std::to_string(i) + "," + std::to_string(j) + ") is a polygon side");
  }

  friend bool operator==(const Diagonal&, const Diagonal&) = default;
  friend auto operator<=>(const Diagonal&, const Diagonal&) = default;
};

/// Distinct diagonals with strictly interleaved endpoints.
inline bool diagonals_cross(const Diagonal& a, const Diagonal& b) {
  return (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j);
}

struct Triangulation {
  int n = 0;
  std::vector<Diagonal> diagonals;  // order fixes the quiver's vertex order

  void validate() const {
    if (n < 1) throw InvalidArgument("triangulation needs n >= 1");
    if (diagonals.size() != static_cast<std::size_t>(n))
      throw InvalidArgument("a triangulation of the " + std::to_string(n + 3) + "-gon has exactly " +
                            std::to_string(n) + " diagonals");
    for (std::size_t a = 0; a < diagonals.size(); ++a) {
      diagonals[a].validate(n);
      for (std::size_t b = a + 1; b < diagonals.size(); ++b) {
        if (diagonals[a] == diagonals[b]) throw InvalidArgument("repeated diagonal");
        if (diagonals_cross(diagonals[a], diagonals[b])) throw InvalidArgument("crossing diagonals");
      }
    }
  }

  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

inline std::uint64_t catalan(int m) {
  std::uint64_t c = 1;
  for (int k = 0; k < m; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

namespace detail {

// Triangulations of the sub-polygon P_a, ..., P_b: the side a-b lies in a
// unique triangle (a, c, b).
inline std::vector<std::vector<Diagonal>> triangulate_range(int a, int b) {
  if (b - a < 2) return {{}};
  std::vector<std::vector<Diagonal>> out;
  for (int c = a + 1; c < b; ++c) {
    const auto left = triangulate_range(a, c);
    const auto right = triangulate_range(c, b);
    for (const auto& l : left)
      for (const auto& r : right) {
        std::vector<Diagonal> t;
        if (c - a >= 2) t.push_back({a, c});
        if (b - c >= 2) t.push_back({c, b});
        t.insert(t.end(), l.begin(), l.end());
        t.insert(t.end(), r.begin(), r.end());
        std::sort(t.begin(), t.end());
        out.push_back(std::move(t));
      }
  }
  return out;
}

}  // namespace detail

/// All Catalan(n+1) triangulations of the (n+3)-gon, diagonals sorted within
/// each and triangulations in lexicographic order.
inline std::vector<Triangulation> enumerate_triangulations(int n, int max_n = 12) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (n > max_n) throw InvalidArgument("n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(max_n));
  auto sets = detail::triangulate_range(1, n + 3);
  std::sort(sets.begin(), sets.end());
  std::vector<Triangulation> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back({n, std::move(s)});
  return out;
}

/// Uniform sample: the triangle on side 1-(n+3) is chosen with probability
/// proportional to the number of triangulations it admits, recursively.
template <class Rng>
Triangulation random_triangulation(int n, Rng& rng) {
  if (n < 1 || n > 30) throw InvalidArgument("random_triangulation supports 1 <= n <= 30");
  std::vector<Diagonal> diags;
  auto split = [&](auto&& self, int a, int b) -> void {
    if (b - a < 2) return;
    const std::uint64_t total = catalan(b - a - 1);
    std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
    std::uint64_t r = pick(rng);
    int c = a + 1;
    for (; c < b; ++c) {
      const std::uint64_t w = catalan(c - a - 1) * catalan(b - c - 1);
      if (r < w) break;
      r -= w;
    }
    if (c - a >= 2) diags.push_back({a, c});
    if (b - c >= 2) diags.push_back({c, b});
    self(self, a, c);
    self(self, c, b);
  };
  split(split, 1, n + 3);
  std::sort(diags.begin(), diags.end());
  return {n, std::move(diags)};
}

/// Vertices are the diagonals in the order given. Inside a triangle
/// P_p P_q P_r (p < q < r, anticlockwise) the rotation through the triangle
/// is anticlockwise from pq to pr, from qr to pq and from pr to qr.
inline ExchangeMatrix quiver_from_triangulation(const Triangulation& t) {
  t.validate();
  const int corners = t.n + 3;
  auto vertex_of = [&](int a, int b) -> int {
    for (std::size_t v = 0; v < t.diagonals.size(); ++v)
      if (t.diagonals[v] == Diagonal{a, b}) return static_cast<int>(v);
    return -1;
  };
  auto is_side = [&](int a, int b) { return b - a == 1 || (a == 1 && b == corners); };

  std::vector<std::pair<int, int>> arrows;
  for (int p = 1; p <= corners; ++p)
    for (int q = p + 1; q <= corners; ++q)
      for (int r = q + 1; r <= corners; ++r) {
        const int pq = vertex_of(p, q), qr = vertex_of(q, r), pr = vertex_of(p, r);
        if ((pq < 0 && !is_side(p, q)) || (qr < 0 && !is_side(q, r)) || (pr < 0 && !is_side(p, r))) continue;
        if (pq >= 0 && pr >= 0) arrows.emplace_back(pq, pr);
        if (qr >= 0 && pq >= 0) arrows.emplace_back(qr, pq);
        if (pr >= 0 && qr >= 0) arrows.emplace_back(pr, qr);
      }
  return ExchangeMatrix::from_arrows(t.diagonals.size(), arrows);
}

using Arrow = std::pair<int, int>;

/// Forbidden length-two paths (first arrow, then second arrow).
struct GentleRelations {
  std::vector<std::pair<Arrow, Arrow>> forbidden;

  bool forbids(Arrow first, Arrow second) const {
    return std::binary_search(forbidden.begin(), forbidden.end(), std::make_pair(first, second));
  }
};

/// The consecutive-arrow pairs of every oriented 3-cycle.
inline GentleRelations relations_of(const ExchangeMatrix& b) {
  b.require_unit_entries();
  GentleRelations rel;
  for (const auto& c : chordless_cycles(b)) {
    if (c.vertices.size() > 3)
      throw InvalidArgument("chordless cycle of length " + std::to_string(c.vertices.size()) +
                            ": not a triangulation quiver");
    if (!is_cyclically_oriented(b, c)) throw InvalidArgument("3-cycle is not oriented: not a triangulation quiver");
    auto v = c.vertices;
    if (b(v[0], v[1]) < 0) std::swap(v[1], v[2]);
    for (std::size_t i = 0; i < 3; ++i) {
      const int x = v[i], y = v[(i + 1) % 3], z = v[(i + 2) % 3];
      rel.forbidden.push_back({{x, y}, {y, z}});
    }
  }
  std::sort(rel.forbidden.begin(), rel.forbidden.end());
  return rel;
}

/// Reduced walk x_0, ..., x_t; direct[i] says the step x_i -> x_{i+1} follows an arrow.
struct StringWalk {
  std::vector<int> vertices;
  std::vector<bool> direct;

  std::size_t length() const { return direct.size(); }

  StringWalk reversed() const {
    StringWalk r{{vertices.rbegin(), vertices.rend()}, {}};
    for (auto it = direct.rbegin(); it != direct.rend(); ++it) r.direct.push_back(!*it);
    return r;
  }

  friend bool operator==(const StringWalk&, const StringWalk&) = default;
  friend auto operator<=>(const StringWalk& a, const StringWalk& b) {
    if (auto c = a.vertices <=> b.vertices; c != 0) return c;
    return a.direct <=> b.direct;
  }
};

/// Representative of {p, p reversed}: the end with the smaller vertex first.
inline StringWalk canonical_string(const StringWalk& p) {
  const auto r = p.reversed();
  if (p.vertices.front() != p.vertices.back()) return p.vertices.front() < p.vertices.back() ? p : r;
  return std::min(p, r);
}

namespace detail {

inline bool step_allowed(const GentleRelations& rel, const StringWalk& w, int next, bool direct) {
  const int cur = w.vertices.back();
  if (w.vertices.size() < 2) return true;
  const int prev = w.vertices[w.vertices.size() - 2];
  const bool prev_direct = w.direct.back();
  if (next == prev) return false;  // at most one arrow per pair, so this backtracks
  if (direct && prev_direct) return !rel.forbids({prev, cur}, {cur, next});
  if (!direct && !prev_direct) return !rel.forbids({next, cur}, {cur, prev});
  return true;
}

}  // namespace detail

inline void validate_string(const ExchangeMatrix& b, const GentleRelations& rel, const StringWalk& p) {
  if (p.vertices.empty() || p.direct.size() + 1 != p.vertices.size()) throw InvalidArgument("malformed walk");
  for (int v : p.vertices) b.check_vertex(static_cast<std::size_t>(v));
  StringWalk prefix{{p.vertices[0]}, {}};
  for (std::size_t i = 0; i < p.direct.size(); ++i) {
    const int cur = p.vertices[i], next = p.vertices[i + 1];
    const int e = p.direct[i] ? b(cur, next) : b(next, cur);
    if (e <= 0) throw InvalidArgument("walk step has no matching arrow");
    if (!detail::step_allowed(rel, prefix, next, p.direct[i]))
      throw InvalidArgument("walk backtracks or contains a relation");
    prefix.vertices.push_back(next);
    prefix.direct.push_back(p.direct[i]);
  }
}

/// All strings of a triangulation quiver up to reversal, in canonical form and sorted.
inline std::vector<StringWalk> enumerate_strings(const ExchangeMatrix& b) {
  const auto rel = relations_of(b);
  const std::size_t n = b.size();
  std::set<StringWalk> found;
  StringWalk w;
  auto extend = [&](auto&& self) -> void {
    found.insert(canonical_string(w));
    if (w.length() >= n)
      throw ConstructionError("walks of unbounded length: the algebra is not representation-finite");
    const int cur = w.vertices.back();
    for (std::size_t y = 0; y < n; ++y) {
      if (b(cur, y) == 0) continue;
      const bool direct = b(cur, y) > 0;
      if (!detail::step_allowed(rel, w, static_cast<int>(y), direct)) continue;
      w.vertices.push_back(static_cast<int>(y));
      w.direct.push_back(direct);
      self(self);
      w.vertices.pop_back();
      w.direct.pop_back();
    }
  };
  for (std::size_t x = 0; x < n; ++x) {
    w = StringWalk{{static_cast<int>(x)}, {}};
    extend(extend);
  }
  return {found.begin(), found.end()};
}

/// Dimension vector of the string module M(p): one copy of k per visit.
inline DVector string_dim_vector(const ExchangeMatrix& b, const StringWalk& p) {
  validate_string(b, relations_of(b), p);
  DVector d(b.size(), 0);
  for (int v : p.vertices) ++d[v];
  return d;
}

inline std::vector<DVector> indecomposable_dim_vectors(const ExchangeMatrix& b) {
  std::set<DVector> dims;
  for (const auto& p : enumerate_strings(b)) {
    DVector d(b.size(), 0);
    for (int v : p.vertices) ++d[v];
    dims.insert(std::move(d));
  }
  return {dims.begin(), dims.end()};
}

/// The d-vectors of psi are exactly the dimension vectors of the indecomposables.
inline bool is_strong_companion_basis(const CompanionBasis& psi, const ExchangeMatrix& b) {
  require_companion_basis(psi, b);
  return d_vector_set(psi).sorted() == indecomposable_dim_vectors(b);
}

/// Snake diagonals: index i-1 holds the diagonal identified with -alpha_i.
inline std::vector<Diagonal> snake_diagonals(int n) {
  std::vector<Diagonal> snake(n);
  for (int i = 1; 2 * i - 1 <= n; ++i) snake[2 * i - 2] = {i, n + 3 - i};
  for (int i = 1; 2 * i <= n; ++i) snake[2 * i - 1] = {i + 1, n + 3 - i};
  return snake;
}

/// Almost positive root of a diagonal: -alpha_i on the snake, otherwise the sum
/// of alpha_i over the snake diagonals it crosses (always an interval).
inline Root almost_positive_root_of_diagonal(int n, const Diagonal& d) {
  d.validate(n);
  const auto snake = snake_diagonals(n);
  std::vector<int> coords(n, 0);
  for (int i = 0; i < n; ++i)
    if (snake[i] == d) {
      coords[i] = -1;
      return Root(std::move(coords));
    }
  int first = -1, last = -1;
  for (int i = 0; i < n; ++i)
    if (diagonals_cross(d, snake[i])) {
      if (first < 0) first = i;
      if (last >= 0 && last != i - 1) throw ConstructionError("crossed snake diagonals are not consecutive");
      last = i;
      coords[i] = 1;
    }
  if (first < 0) throw ConstructionError("diagonal crosses no snake diagonal");
  return Root(std::move(coords));
}

/// One verification record: the quiver of T, a constructed companion basis
/// and whether it is strong.
struct TriangulationReport {
  Triangulation triangulation;
  ExchangeMatrix quiver;
  bool strong = false;
  std::size_t n_strings = 0;
};

inline TriangulationReport verify_triangulation(const Triangulation& t, RootSystemPtr rs = nullptr) {
  TriangulationReport rep{t, quiver_from_triangulation(t), false, 0};
  const auto psi = companion_basis_for(rep.quiver, std::move(rs));
  rep.n_strings = enumerate_strings(rep.quiver).size();
  rep.strong = is_strong_companion_basis(psi, rep.quiver);
  return rep;
}

}  // namespace cbasis::type_a
