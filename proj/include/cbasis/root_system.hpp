#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cbasis/error.hpp"
#include "cbasis/int_matrix.hpp"

namespace cbasis {

enum class Family { A, D, E };

/// Simply-laced Dynkin type; serialized as "A4", "D5", "E6".
struct DynkinType {
  Family family = Family::A;
  int rank = 1;

  static DynkinType make(Family family, int rank) {
    DynkinType t{family, rank};
    t.validate();
    return t;
  }

  static DynkinType parse(std::string_view text) {
    if (text.size() < 2) throw ParseError("bad Dynkin type '" + std::string(text) + "'");
    DynkinType t;
    switch (text[0]) {
      case 'A': t.family = Family::A; break;
      case 'D': t.family = Family::D; break;
      case 'E': t.family = Family::E; break;
      default: throw ParseError("unknown Dynkin family in '" + std::string(text) + "'");
    }
    const auto digits = text.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        digits.size() > 3)
      throw ParseError("bad Dynkin rank in '" + std::string(text) + "'");
    t.rank = std::stoi(std::string(digits));
    try {
      t.validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
    return t;
  }

  void validate() const {
    const bool ok = (family == Family::A && rank >= 1) || (family == Family::D && rank >= 4) ||
                    (family == Family::E && rank >= 6 && rank <= 8);
    if (!ok) throw InvalidArgument("invalid rank " + std::to_string(rank) + " for family " + family_char());
  }

  char family_char() const {
    switch (family) {
      case Family::A: return 'A';
      case Family::D: return 'D';
      case Family::E: return 'E';
    }
    return '?';
  }

  std::string to_string() const { return family_char() + std::to_string(rank); }

  std::size_t num_positive_roots() const {
    const auto n = static_cast<std::size_t>(rank);
    switch (family) {
      case Family::A: return n * (n + 1) / 2;
      case Family::D: return n * (n - 1);
      case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    }
    return 0;
  }

  friend bool operator==(const DynkinType&, const DynkinType&) = default;
  friend std::ostream& operator<<(std::ostream& os, const DynkinType& t) { return os << t.to_string(); }
};

/// Edges of the Dynkin diagram on 0-based simple indices (Bourbaki labelling).
inline std::vector<std::pair<int, int>> dynkin_edges(const DynkinType& t) {
  t.validate();
  const int n = t.rank;
  std::vector<std::pair<int, int>> edges;
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 3, n - 1);
      break;
    case Family::E:
      // 1-3-4-5-...-n with 2 attached to 4.
      edges.emplace_back(0, 2);
      for (int i = 2; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(1, 3);
      break;
  }
  return edges;
}

inline IntMatrix cartan_matrix(const DynkinType& t) {
  const auto n = static_cast<std::size_t>(t.rank);
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) c(i, i) = 2;
  for (auto [i, j] : dynkin_edges(t)) c(i, j) = c(j, i) = -1;
  return c;
}

/// An integer vector in simple-root coordinates. Whether it is actually a
/// root is a question for RootSystem::classify.
class Root {
 public:
  Root() = default;
  explicit Root(std::vector<int> coords) : coords_(std::move(coords)) {}
  Root(std::initializer_list<int> coords) : coords_(coords) {}

  static Root simple(std::size_t rank, std::size_t i) {
    std::vector<int> v(rank, 0);
    v.at(i) = 1;
    return Root(std::move(v));
  }

  std::size_t rank() const { return coords_.size(); }
  int operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<int>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
  }
  int coordinate_sum() const { return std::accumulate(coords_.begin(), coords_.end(), 0); }

  Root operator-() const {
    Root r = *this;
    for (int& c : r.coords_) c = -c;
    return r;
  }
  Root& operator+=(const Root& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Root& operator-=(const Root& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend Root operator+(Root a, const Root& b) { return a += b; }
  friend Root operator-(Root a, const Root& b) { return a -= b; }
  friend Root operator*(int k, Root a) {
    for (int& c : a.coords_) c *= k;
    return a;
  }

  friend bool operator==(const Root&, const Root&) = default;
  friend auto operator<=>(const Root&, const Root&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Root& r) {
    os << '(';
    for (std::size_t i = 0; i < r.coords_.size(); ++i) os << (i ? "," : "") << r.coords_[i];
    return os << ')';
  }

 private:
  void check_rank(const Root& o) const {
    if (o.rank() != rank()) throw InvalidArgument("root dimension mismatch");
  }
  std::vector<int> coords_;
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(x))) * 0x100000001b3ULL;
    return h;
  }
};

enum class RootClass { positive_root, negative_root, not_root };

/// A product s_{l_1} s_{l_2} ... s_{l_t} of reflections in arbitrary roots.
/// Applied to a vector, the rightmost letter acts first.
struct WeylWord {
  std::vector<Root> letters;
};

/// Permutation of simple-root indices; sends alpha_i to alpha_{perm[i]}.
struct DiagramAutomorphism {
  std::vector<int> perm;

  static DiagramAutomorphism identity(std::size_t n) {
    DiagramAutomorphism s;
    s.perm.resize(n);
    std::iota(s.perm.begin(), s.perm.end(), 0);
    return s;
  }

  Root apply(const Root& a) const {
    if (a.rank() != perm.size()) throw InvalidArgument("automorphism dimension mismatch");
    std::vector<int> out(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = a[i];
    return Root(std::move(out));
  }

  friend bool operator==(const DiagramAutomorphism&, const DiagramAutomorphism&) = default;
};

/// Positive roots of a simply-laced system together with the form (x, y) = x^T C y.
class RootSystem {
 public:
  explicit RootSystem(DynkinType dynkin) : dynkin_(dynkin), cartan_(cartan_matrix(dynkin)) {
    generate_positive_roots();
  }

  const DynkinType& dynkin() const { return dynkin_; }
  std::size_t rank() const { return static_cast<std::size_t>(dynkin_.rank); }
  const IntMatrix& cartan() const { return cartan_; }
  const std::vector<Root>& positive_roots() const { return positive_; }

  Root simple_root(std::size_t i) const {
    if (i >= rank()) throw IndexError("simple root index out of range");
    return Root::simple(rank(), i);
  }

  int inner_product(const Root& a, const Root& b) const {
    check_dim(a);
    check_dim(b);
    const std::size_t n = rank();
    int s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      int row = 0;
      for (std::size_t j = 0; j < n; ++j) row += cartan_(i, j) * b[j];
      s += a[i] * row;
    }
    return s;
  }

  RootClass classify(std::span<const int> v) const {
    if (v.size() != rank()) throw InvalidArgument("vector length does not match rank");
    std::vector<int> key(v.begin(), v.end());
    if (index_.contains(key)) return RootClass::positive_root;
    for (int& c : key) c = -c;
    if (index_.contains(key)) return RootClass::negative_root;
    return RootClass::not_root;
  }
  RootClass classify(const Root& v) const { return classify(std::span<const int>(v.coords())); }

  bool is_root(const Root& v) const { return classify(v) != RootClass::not_root; }

  /// Position of `alpha` in positive_roots(), or of -alpha for a negative root.
  std::size_t positive_index(const Root& alpha) const {
    check_dim(alpha);
    if (auto it = index_.find(alpha.coords()); it != index_.end()) return it->second;
    if (auto it = index_.find((-alpha).coords()); it != index_.end()) return it->second;
    throw InvalidArgument("vector is not a root");
  }

  /// s_mirror(a) = a - (a, mirror) mirror.
  Root reflect(const Root& a, const Root& mirror) const {
    check_dim(a);
    if (!is_root(mirror)) throw InvalidArgument("reflection mirror is not a root");
    return a - inner_product(a, mirror) * mirror;
  }

  Root apply(const WeylWord& w, Root a) const {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) a = reflect(a, *it);
    return a;
  }

 private:
  void check_dim(const Root& a) const {
    if (a.rank() != rank()) throw InvalidArgument("root dimension does not match rank");
  }

  // Closure of the simple roots under simple reflections, keeping positive
  // images. Every positive root is reached from a simple root this way.
  void generate_positive_roots() {
    const std::size_t n = rank();
    std::vector<Root> frontier;
    for (std::size_t i = 0; i < n; ++i) frontier.push_back(Root::simple(n, i));
    std::unordered_map<std::vector<int>, std::size_t, VectorHash> seen;
    std::vector<Root> all;
    for (const auto& r : frontier) {
      seen.emplace(r.coords(), 0);
      all.push_back(r);
    }
    while (!frontier.empty()) {
      std::vector<Root> next;
      for (const auto& beta : frontier)
        for (std::size_t i = 0; i < n; ++i) {
          int pairing = 0;
          for (std::size_t j = 0; j < n; ++j) pairing += cartan_(i, j) * beta[j];
          if (pairing >= 0) continue;  // only height-increasing images
          std::vector<int> img = beta.coords();
          img[i] -= pairing;
          if (seen.emplace(img, 0).second) {
            all.emplace_back(img);
            next.emplace_back(std::move(img));
          }
        }
      frontier = std::move(next);
    }
    // Graded by height; within a height, descending lexicographic so that the
    // simple roots appear as alpha_1, ..., alpha_n.
    std::sort(all.begin(), all.end(), [](const Root& a, const Root& b) {
      const int ha = a.coordinate_sum(), hb = b.coordinate_sum();
      if (ha != hb) return ha < hb;
      return a > b;
    });
    positive_ = std::move(all);
    for (std::size_t i = 0; i < positive_.size(); ++i) index_[positive_[i].coords()] = i;
  }

  DynkinType dynkin_;
  IntMatrix cartan_;
  std::vector<Root> positive_;
  std::unordered_map<std::vector<int>, std::size_t, VectorHash> index_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

inline RootSystemPtr build_root_system(DynkinType dynkin) {
  dynkin.validate();
  return std::make_shared<const RootSystem>(dynkin);
}

/// All permutations of the simple indices that preserve the Cartan matrix.
inline std::vector<DiagramAutomorphism> diagram_automorphisms(const DynkinType& dynkin) {
  const IntMatrix c = cartan_matrix(dynkin);
  const std::size_t n = c.rows();
  std::vector<DiagramAutomorphism> out;
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  // Backtracking: fix perm[0..i) and check the form on the assigned block.
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back({perm});
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = c(i, i) == c(v, v);
      for (std::size_t j = 0; ok && j < i; ++j)
        ok = c(i, j) == c(v, static_cast<std::size_t>(perm[j]));
      if (!ok) continue;
      used[v] = true;
      perm[i] = static_cast<int>(v);
      self(self, i + 1);
      used[v] = false;
    }
  };
  extend(extend, 0);
  return out;
}

/// Matrix whose columns are the simple-basis coordinates of `basis`.
inline IntMatrix coordinate_matrix(std::span<const Root> basis, std::size_t rank) {
  IntMatrix m(rank, basis.size());
  for (std::size_t x = 0; x < basis.size(); ++x) {
    if (basis[x].rank() != rank) throw InvalidArgument("basis vector dimension mismatch");
    for (std::size_t i = 0; i < rank; ++i) m(i, x) = basis[x][i];
  }
  return m;
}

inline bool is_z_basis(const RootSystem& rs, std::span<const Root> basis) {
  if (basis.size() != rs.rank())
    throw InvalidArgument("a basis needs exactly rank = " + std::to_string(rs.rank()) + " vectors");
  const auto det = determinant(coordinate_matrix(basis, rs.rank()));
  return det == 1 || det == -1;
}

/// A Z-basis of the root lattice with its cached integer change of basis.
class LatticeBasis {
 public:
  LatticeBasis(const RootSystem& rs, std::vector<Root> basis) : basis_(std::move(basis)) {
    if (basis_.size() != rs.rank())
      throw InvalidArgument("a basis needs exactly rank = " + std::to_string(rs.rank()) + " vectors");
    try {
      inverse_ = unimodular_inverse(coordinate_matrix(basis_, rs.rank()));
    } catch (const ConstructionError&) {
      throw ConstructionError("vectors do not form a Z-basis of the root lattice");
    }
  }

  const std::vector<Root>& vectors() const { return basis_; }

  /// Unique integer coefficients c with a = sum_x c_x basis_x.
  std::vector<int> expand(const Root& a) const {
    if (a.rank() != basis_.size()) throw InvalidArgument("root dimension mismatch");
    return multiply(inverse_, a.coords());
  }

  Root combine(std::span<const int> coeffs) const {
    if (coeffs.size() != basis_.size()) throw InvalidArgument("coefficient vector length mismatch");
    Root r(std::vector<int>(basis_.size(), 0));
    for (std::size_t x = 0; x < basis_.size(); ++x)
      if (coeffs[x] != 0) r += coeffs[x] * basis_[x];
    return r;
  }

 private:
  std::vector<Root> basis_;
  IntMatrix inverse_;
};

inline std::vector<int> expand_in_lattice_basis(const RootSystem& rs, const Root& a,
                                                std::span<const Root> basis) {
  return LatticeBasis(rs, {basis.begin(), basis.end()}).expand(a);
}

inline int height_wrt_basis(const RootSystem& rs, const Root& a, std::span<const Root> basis) {
  int h = 0;
  for (int c : expand_in_lattice_basis(rs, a, basis)) h += std::abs(c);
  return h;
}

}  // namespace cbasis
