#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbasis/error.hpp"
#include "cbasis/gf2.hpp"
#include "cbasis/int_matrix.hpp"
#include "cbasis/root_system.hpp"

namespace cbasis {

/// Skew-symmetric integer matrix B; the quiver has b_xy arrows x -> y when b_xy > 0.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  explicit ExchangeMatrix(IntMatrix b) : b_(std::move(b)) {
    if (b_.rows() == 0) throw InvalidArgument("exchange matrix must have at least one vertex");
    if (!b_.is_skew_symmetric()) throw InvalidArgument("exchange matrix is not skew-symmetric");
  }

  static ExchangeMatrix zero(std::size_t n) { return ExchangeMatrix(IntMatrix(n, n)); }

  /// Builds B from an arrow list; repeated arrows add up, opposite ones cancel.
  static ExchangeMatrix from_arrows(std::size_t n, std::span<const std::pair<int, int>> arrows) {
    IntMatrix b(n, n);
    for (auto [s, t] : arrows) {
      if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= n || static_cast<std::size_t>(t) >= n)
        throw IndexError("arrow endpoint out of range");
      if (s == t) throw InvalidArgument("loops are not allowed");
      b(s, t) += 1;
      b(t, s) -= 1;
    }
    return ExchangeMatrix(std::move(b));
  }
  static ExchangeMatrix from_arrows(std::size_t n, std::initializer_list<std::pair<int, int>> arrows) {
    return from_arrows(n, std::span<const std::pair<int, int>>(arrows.begin(), arrows.size()));
  }

  std::size_t size() const { return b_.rows(); }
  int operator()(std::size_t x, std::size_t y) const { return b_(x, y); }
  const IntMatrix& matrix() const { return b_; }

  bool adjacent(std::size_t x, std::size_t y) const { return b_(x, y) != 0; }

  /// True when every entry lies in {0, 1, -1} (the finite-type shape).
  bool has_unit_entries() const {
    return std::all_of(b_.data().begin(), b_.data().end(), [](int v) { return v >= -1 && v <= 1; });
  }
  void require_unit_entries() const {
    if (!has_unit_entries()) throw InvalidArgument("exchange matrix has an entry outside {0, 1, -1}");
  }

  void check_vertex(std::size_t k) const {
    if (k >= size()) throw IndexError("vertex " + std::to_string(k) + " out of range");
  }

  std::size_t num_edges() const {
    std::size_t e = 0;
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = x + 1; y < size(); ++y) e += adjacent(x, y);
    return e;
  }

  bool is_connected() const {
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < size(); ++y)
        if (!seen[y] && adjacent(x, y)) {
          seen[y] = true;
          ++count;
          stack.push_back(y);
        }
    }
    return count == size();
  }

  /// Underlying graph is a tree (connected with n - 1 edges, simple edges only).
  bool is_tree() const { return has_unit_entries() && is_connected() && num_edges() + 1 == size(); }

  ExchangeMatrix opposite() const { return ExchangeMatrix(-b_); }

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;

 private:
  IntMatrix b_;
};

inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k) {
  b.check_vertex(k);
  const std::size_t n = b.size();
  IntMatrix out(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == k || y == k) {
        out(x, y) = -b(x, y);
      } else {
        const int bxk = b(x, k), bky = b(k, y);
        out(x, y) = b(x, y) + (std::abs(bxk) * bky + bxk * std::abs(bky)) / 2;
      }
    }
  return ExchangeMatrix(std::move(out));
}

inline ExchangeMatrix mutate_sequence(ExchangeMatrix b, std::span<const std::size_t> ks) {
  for (auto k : ks) b = mutate_matrix(b, k);
  return b;
}

struct QuiverView {
  std::size_t n = 0;
  std::vector<std::pair<int, int>> arrows;  // sorted by (source, target), repeated per multiplicity
};

inline QuiverView quiver_of(const ExchangeMatrix& b) {
  QuiverView q{b.size(), {}};
  for (std::size_t s = 0; s < b.size(); ++s)
    for (std::size_t t = 0; t < b.size(); ++t)
      for (int m = 0; m < b(s, t); ++m) q.arrows.emplace_back(static_cast<int>(s), static_cast<int>(t));
  return q;
}

/// An induced cycle of the underlying graph, stored smallest vertex first and
/// the smaller of its two neighbours second.
struct ChordlessCycle {
  std::vector<int> vertices;

  friend bool operator==(const ChordlessCycle&, const ChordlessCycle&) = default;
  friend auto operator<=>(const ChordlessCycle&, const ChordlessCycle&) = default;
};

inline ChordlessCycle canonical_rotation(std::vector<int> cyc) {
  auto it = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), it, cyc.end());
  if (cyc.size() > 2 && cyc.back() < cyc[1]) std::reverse(cyc.begin() + 1, cyc.end());
  return {std::move(cyc)};
}

/// Every induced cycle of length >= 3 in the underlying graph of B, sorted.
inline std::vector<ChordlessCycle> chordless_cycles(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  std::vector<ChordlessCycle> out;
  std::vector<int> path;
  // Grow induced paths s = p_0, p_1, ..., all larger than s; close when the
  // new vertex touches s. Each cycle is met once per direction; keep the one
  // whose second vertex is smaller than its last.
  auto grow = [&](auto&& self, std::size_t s) -> void {
    const auto last = static_cast<std::size_t>(path.back());
    for (std::size_t w = s + 1; w < n; ++w) {
      if (!b.adjacent(last, w)) continue;
      if (std::find(path.begin(), path.end(), static_cast<int>(w)) != path.end()) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size() && !chord; ++i)
        chord = b.adjacent(static_cast<std::size_t>(path[i]), w);
      if (chord) continue;
      if (path.size() > 1 && b.adjacent(s, w)) {
        if (path[1] < static_cast<int>(w)) {
          auto cyc = path;
          cyc.push_back(static_cast<int>(w));
          out.push_back({std::move(cyc)});
        }
        continue;
      }
      path.push_back(static_cast<int>(w));
      self(self, s);
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path.assign(1, static_cast<int>(s));
    grow(grow, s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void check_is_chordless_cycle(const ExchangeMatrix& b, const ChordlessCycle& c) {
  const auto& v = c.vertices;
  const std::size_t m = v.size();
  if (m < 3) throw InvalidArgument("a chordless cycle has at least three vertices");
  for (int x : v) b.check_vertex(static_cast<std::size_t>(x));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (v[i] == v[j]) throw InvalidArgument("cycle repeats a vertex");
      const bool consecutive = j == i + 1 || (i == 0 && j == m - 1);
      if (consecutive != b.adjacent(v[i], v[j]))
        throw InvalidArgument("vertex sequence is not a chordless cycle of the quiver");
    }
}

inline bool is_cyclically_oriented(const ExchangeMatrix& b, const ChordlessCycle& c) {
  check_is_chordless_cycle(b, c);
  const auto& v = c.vertices;
  bool forward = true, backward = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int e = b(v[i], v[(i + 1) % v.size()]);
    forward = forward && e > 0;
    backward = backward && e < 0;
  }
  return forward || backward;
}

/// Symmetric matrix with diagonal 2.
class QuasiCartanCompanion {
 public:
  QuasiCartanCompanion() = default;
  explicit QuasiCartanCompanion(IntMatrix a) : a_(std::move(a)) {
    if (!a_.is_symmetric()) throw InvalidArgument("quasi-Cartan matrix must be symmetric");
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (a_(i, i) != 2) throw InvalidArgument("quasi-Cartan matrix must have diagonal 2");
  }

  std::size_t size() const { return a_.rows(); }
  int operator()(std::size_t x, std::size_t y) const { return a_(x, y); }
  const IntMatrix& matrix() const { return a_; }

  /// |a_xy| = |b_xy| off the diagonal.
  bool is_companion_of(const ExchangeMatrix& b) const {
    if (b.size() != size()) return false;
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        if (x != y && std::abs(a_(x, y)) != std::abs(b(x, y))) return false;
    return true;
  }

  friend bool operator==(const QuasiCartanCompanion&, const QuasiCartanCompanion&) = default;

 private:
  IntMatrix a_;
};

inline QuasiCartanCompanion cartan_counterpart(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  IntMatrix a(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) a(x, y) = x == y ? 2 : -std::abs(b(x, y));
  return QuasiCartanCompanion(std::move(a));
}

/// Product of -a_ij over the edges of the cycle.
inline std::int64_t cycle_sign_product(const QuasiCartanCompanion& a, const ChordlessCycle& c) {
  std::int64_t p = 1;
  const auto& v = c.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) p *= -a(v[i], v[(i + 1) % v.size()]);
  return p;
}

inline bool satisfies_triangle_condition(const QuasiCartanCompanion& a, const ExchangeMatrix& b) {
  if (!a.is_companion_of(b)) throw InvalidArgument("matrix is not a quasi-Cartan companion of B");
  for (const auto& c : chordless_cycles(b))
    if (cycle_sign_product(a, c) >= 0) return false;
  return true;
}

namespace detail {
inline std::string describe_cycle(const ChordlessCycle& c) {
  std::string s;
  for (int v : c.vertices) s += (s.empty() ? "" : "-") + std::to_string(v);
  return s;
}
}  // namespace detail

/// Chooses one sign per edge so that every chordless cycle carries an odd
/// number of positive signs. Free edges stay negative, so a forest yields its
/// Cartan counterpart.
inline QuasiCartanCompanion build_companion_with_triangle_condition(const ExchangeMatrix& b) {
  const auto cycles = chordless_cycles(b);
  for (const auto& c : cycles)
    if (!is_cyclically_oriented(b, c))
      throw ConstructionError("chordless cycle " + detail::describe_cycle(c) + " is not cyclically oriented");

  const std::size_t n = b.size();
  std::map<std::pair<int, int>, std::size_t> edge_index;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (b.adjacent(x, y)) edge_index.emplace(std::pair<int, int>(x, y), edge_index.size());

  std::vector<gf2::Equation> eqs;
  for (const auto& c : cycles) {
    gf2::Equation eq{gf2::Row(edge_index.size()), true};
    const auto& v = c.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const int p = v[i], q = v[(i + 1) % v.size()];
      eq.lhs.flip(edge_index.at({std::min(p, q), std::max(p, q)}));
    }
    eqs.push_back(std::move(eq));
  }
  const auto sol = gf2::solve(edge_index.size(), std::move(eqs));
  if (sol.inconsistent_equation)
    throw ConstructionError("no sign assignment makes cycle " +
                            detail::describe_cycle(cycles[*sol.inconsistent_equation]) +
                            " carry an odd number of positive signs");

  IntMatrix a(n, n);
  for (std::size_t x = 0; x < n; ++x) a(x, x) = 2;
  for (const auto& [edge, idx] : edge_index) {
    const int mag = std::abs(b(edge.first, edge.second));
    a(edge.first, edge.second) = a(edge.second, edge.first) = sol.values[idx] ? mag : -mag;
  }
  return QuasiCartanCompanion(std::move(a));
}

/// Sylvester's criterion with exact minors.
inline bool is_positive_quasi_cartan(const QuasiCartanCompanion& a) {
  for (auto m : leading_principal_minors(a.matrix()))
    if (m <= 0) return false;
  return true;
}

inline QuasiCartanCompanion simultaneous_sign_change(const QuasiCartanCompanion& a,
                                                     std::span<const int> vertices) {
  const std::size_t n = a.size();
  std::vector<int> sign(n, 1);
  for (int v : vertices) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw IndexError("vertex out of range");
    sign[v] = -1;
  }
  IntMatrix m = a.matrix();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m(x, y) *= sign[x] * sign[y];
  return QuasiCartanCompanion(std::move(m));
}

inline constexpr const char* kCycleNotOriented = "chordless cycle not cyclically oriented";
inline constexpr const char* kNoTriangleCompanion = "no quasi-Cartan companion satisfies the triangle condition";
inline constexpr const char* kCompanionNotPositive = "quasi-Cartan companion not positive";

struct Recognition {
  bool finite_type = false;
  std::optional<std::string> failing_condition;
  std::optional<ChordlessCycle> failing_cycle;
  std::optional<QuasiCartanCompanion> companion;
};

/// Finite-type test: every chordless cycle cyclically oriented, and the
/// triangle-condition companion positive definite.
inline Recognition recognize(const ExchangeMatrix& b) {
  Recognition r;
  for (const auto& c : chordless_cycles(b))
    if (!is_cyclically_oriented(b, c)) {
      r.failing_condition = kCycleNotOriented;
      r.failing_cycle = c;
      return r;
    }
  try {
    r.companion = build_companion_with_triangle_condition(b);
  } catch (const ConstructionError&) {
    r.failing_condition = kNoTriangleCompanion;
    return r;
  }
  if (!is_positive_quasi_cartan(*r.companion)) {
    r.failing_condition = kCompanionNotPositive;
    return r;
  }
  r.finite_type = true;
  return r;
}

inline bool is_finite_type(const ExchangeMatrix& b) { return recognize(b).finite_type; }

/// Type of a connected finite-type B from (rank, |det A|) of its positive companion.
inline DynkinType dynkin_type_from_fingerprint(std::size_t n, std::int64_t det) {
  const int r = static_cast<int>(n);
  if (det == r + 1) return DynkinType::make(Family::A, r);
  if (det == 4 && r >= 4) return DynkinType::make(Family::D, r);
  if (r == 6 && det == 3) return DynkinType::make(Family::E, 6);
  if (r == 7 && det == 2) return DynkinType::make(Family::E, 7);
  if (r == 8 && det == 1) return DynkinType::make(Family::E, 8);
  throw ConstructionError("no simply-laced Dynkin type of rank " + std::to_string(n) +
                          " has determinant " + std::to_string(det));
}

inline DynkinType dynkin_type_of(const ExchangeMatrix& b) {
  if (!b.is_connected()) throw ConstructionError("quiver is disconnected");
  const auto r = recognize(b);
  if (!r.finite_type) throw ConstructionError("quiver is not of finite type: " + *r.failing_condition);
  return dynkin_type_from_fingerprint(b.size(), std::llabs(determinant(r.companion->matrix())));
}

namespace detail {

// Colour refinement: a vertex's new colour is the rank of (old colour, sorted
// multiset of (neighbour colour, b_vu)). Ranks are isomorphism-invariant.
inline std::vector<int> refine_colours(const ExchangeMatrix& b, std::vector<int> colour) {
  const std::size_t n = b.size();
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (std::size_t u = 0; u < n; ++u)
        if (b(v, u) != 0) sig[v].second.emplace_back(colour[u], b(v, u));
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t v = 0; v < n; ++v)
      colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    if (sorted.size() == classes) return colour;
    classes = sorted.size();
  }
}

inline void canonical_search(const ExchangeMatrix& b, std::vector<int> colour, std::vector<int>& best) {
  colour = refine_colours(b, std::move(colour));
  const std::size_t n = b.size();
  std::vector<int> count(n, 0);
  for (int c : colour) ++count[c];
  int target = -1;
  for (std::size_t c = 0; c < n; ++c)
    if (count[c] > 1) {
      target = static_cast<int>(c);
      break;
    }
  if (target < 0) {
    std::vector<std::size_t> at(n);
    for (std::size_t v = 0; v < n; ++v) at[colour[v]] = v;
    std::vector<int> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = b(at[i], at[j]);
    if (best.empty() || m < best) best = std::move(m);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (colour[v] != target) continue;
    auto c = colour;
    for (auto& x : c) x *= 2;
    for (std::size_t u = 0; u < n; ++u)
      if (colour[u] == target && u != v) c[u] += 1;
    canonical_search(b, std::move(c), best);
  }
}

}  // namespace detail

/// Relabelling-invariant key for B: the lexicographically least adjacency
/// matrix over the leaves of an individualisation-refinement search.
inline std::vector<int> canonical_form(const ExchangeMatrix& b) {
  std::vector<int> best;
  detail::canonical_search(b, std::vector<int>(b.size(), 0), best);
  best.insert(best.begin(), static_cast<int>(b.size()));
  return best;
}

}  // namespace cbasis
