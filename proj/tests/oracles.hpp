#pragma once

// Brute-force reference computations. Deliberately slow and independent of
// the library's algorithms; only used to freeze or cross-check values.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;
using Mat = std::vector<std::vector<int>>;

/// Laplace expansion along the first row.
inline std::int64_t cofactor_determinant(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Mat sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    det += ((c % 2) ? -1 : 1) * static_cast<std::int64_t>(m[0][c]) * cofactor_determinant(sub);
  }
  return det;
}

/// Dynkin diagram adjacency written out by hand (1-based labels as in the
/// usual pictures), independent of the library's table.
inline Mat cartan(char family, int n) {
  Mat c(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto join = [&](int a, int b) { c[a - 1][b - 1] = c[b - 1][a - 1] = -1; };
  if (family == 'A') {
    for (int i = 1; i < n; ++i) join(i, i + 1);
  } else if (family == 'D') {
    for (int i = 1; i < n - 1; ++i) join(i, i + 1);
    join(n - 2, n);
  } else {
    join(1, 3);
    join(2, 4);
    for (int i = 3; i < n; ++i) join(i, i + 1);
  }
  return c;
}

inline int form(const Mat& c, const Vec& a, const Vec& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * c[i][j] * b[j];
  return s;
}

/// Closure of +-simple roots under every simple reflection until stable;
/// returns the positive part.
inline std::set<Vec> positive_roots_by_closure(const Mat& c) {
  const std::size_t n = c.size();
  std::set<Vec> all;
  std::vector<Vec> todo;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    todo.push_back(e);
    e[i] = -1;
    todo.push_back(e);
  }
  while (!todo.empty()) {
    Vec v = todo.back();
    todo.pop_back();
    if (!all.insert(v).second) continue;
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n, 0);
      e[i] = 1;
      const int p = form(c, v, e);
      Vec w = v;
      w[i] -= p;
      if (!all.count(w)) todo.push_back(w);
    }
  }
  std::set<Vec> pos;
  for (const auto& v : all)
    if (std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; })) pos.insert(v);
  return pos;
}

/// Every permutation checked against the Cartan matrix.
inline std::vector<Vec> automorphisms_by_enumeration(const Mat& c) {
  const int n = static_cast<int>(c.size());
  Vec p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<Vec> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) ok = c[p[i]][p[j]] == c[i][j];
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Vertex subsets whose induced subgraph is a single cycle (>= 3 vertices),
/// reported in canonical rotation.
inline std::set<Vec> induced_cycles_by_subsets(const Mat& b) {
  const int n = static_cast<int>(b.size());
  std::set<Vec> out;
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    Vec vs;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1U) vs.push_back(v);
    if (vs.size() < 3) continue;
    bool all_deg2 = true;
    for (int v : vs) {
      int deg = 0;
      for (int u : vs) deg += (u != v && b[v][u] != 0);
      all_deg2 = all_deg2 && deg == 2;
    }
    if (!all_deg2) continue;
    // walk the cycle; must cover the whole subset (connected)
    Vec cyc{vs[0]};
    int prev = -1, cur = vs[0];
    while (true) {
      int next = -1;
      for (int u : vs)
        if (u != cur && u != prev && b[cur][u] != 0) {
          next = u;
          break;
        }
      if (next == vs[0] || next < 0) break;
      cyc.push_back(next);
      prev = cur;
      cur = next;
    }
    if (cyc.size() != vs.size()) continue;
    if (cyc.back() < cyc[1]) std::reverse(cyc.begin() + 1, cyc.end());
    out.insert(cyc);
  }
  return out;
}

/// Triangulations of the (n+3)-gon as non-crossing n-subsets of diagonals.
inline std::set<std::vector<std::pair<int, int>>> triangulations_by_subsets(int n) {
  const int corners = n + 3;
  std::vector<std::pair<int, int>> diags;
  for (int i = 1; i <= corners; ++i)
    for (int j = i + 2; j <= corners; ++j)
      if (!(i == 1 && j == corners)) diags.emplace_back(i, j);
  auto cross = [](std::pair<int, int> a, std::pair<int, int> b) {
    return (a.first < b.first && b.first < a.second && a.second < b.second) ||
           (b.first < a.first && a.first < b.second && b.second < a.second);
  };
  std::set<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (pick.size() == static_cast<std::size_t>(n)) {
      out.insert(pick);
      return;
    }
    for (std::size_t d = from; d < diags.size(); ++d) {
      bool ok = true;
      for (const auto& p : pick) ok = ok && !cross(p, diags[d]);
      if (!ok) continue;
      pick.push_back(diags[d]);
      self(self, d + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Strings of a triangulation quiver as induced simple paths of the
/// underlying graph: two sides of an oriented triangle always compose to a
/// relation, so a walk is a string exactly when no x_{i-1}, x_{i+1} are joined.
/// Returns vertex sets (0/1 indicators).
inline std::set<Vec> string_supports_by_induced_paths(const Mat& b) {
  const int n = static_cast<int>(b.size());
  std::set<Vec> out;
  Vec path;
  auto rec = [&](auto&& self) -> void {
    Vec ind(n, 0);
    for (int v : path) ind[v] = 1;
    out.insert(ind);
    for (int w = 0; w < n; ++w) {
      if (b[path.back()][w] == 0) continue;
      if (std::find(path.begin(), path.end(), w) != path.end()) continue;
      bool induced = true;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) induced = induced && b[path[i]][w] == 0;
      if (!induced) continue;
      path.push_back(w);
      self(self);
      path.pop_back();
    }
  };
  for (int v = 0; v < n; ++v) {
    path = {v};
    rec(rec);
  }
  return out;
}

}  // namespace oracle
