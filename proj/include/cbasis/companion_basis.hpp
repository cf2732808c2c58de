#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cbasis/error.hpp"
#include "cbasis/int_matrix.hpp"
#include "cbasis/quiver.hpp"
#include "cbasis/root_system.hpp"

namespace cbasis {

/// A root gamma_x for every vertex x of a quiver. Whether the assignment is a
/// companion basis depends on the exchange matrix it is paired with; see
/// check_companion_basis.
class CompanionBasis {
 public:
  CompanionBasis(RootSystemPtr rs, std::vector<Root> gamma) : rs_(std::move(rs)), gamma_(std::move(gamma)) {
    if (!rs_) throw InvalidArgument("companion basis needs a root system");
    if (gamma_.size() != rs_->rank())
      throw InvalidArgument("companion basis needs " + std::to_string(rs_->rank()) + " roots, got " +
                            std::to_string(gamma_.size()));
    for (std::size_t x = 0; x < gamma_.size(); ++x)
      if (gamma_[x].rank() != rs_->rank() || !rs_->is_root(gamma_[x]))
        throw InvalidArgument("gamma_" + std::to_string(x) + " is not a root of " + rs_->dynkin().to_string());
  }

  const RootSystem& root_system() const { return *rs_; }
  const RootSystemPtr& root_system_ptr() const { return rs_; }
  std::size_t size() const { return gamma_.size(); }
  const std::vector<Root>& gamma() const { return gamma_; }
  const Root& operator[](std::size_t x) const { return gamma_.at(x); }

  /// Gram matrix (gamma_x, gamma_y).
  IntMatrix gram() const {
    const std::size_t n = size();
    IntMatrix g(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x; y < n; ++y) g(x, y) = g(y, x) = rs_->inner_product(gamma_[x], gamma_[y]);
    return g;
  }

  LatticeBasis lattice() const { return LatticeBasis(*rs_, gamma_); }

  friend bool operator==(const CompanionBasis& a, const CompanionBasis& b) {
    return a.rs_->dynkin() == b.rs_->dynkin() && a.gamma_ == b.gamma_;
  }

 private:
  RootSystemPtr rs_;
  std::vector<Root> gamma_;
};

struct BasisCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Z-basis of the root lattice whose Gram matrix satisfies |a_xy| = |b_xy|.
inline BasisCheck check_companion_basis(const CompanionBasis& psi, const ExchangeMatrix& b) {
  if (psi.size() != b.size())
    return {false, "basis has " + std::to_string(psi.size()) + " roots but the quiver has " +
                       std::to_string(b.size()) + " vertices"};
  if (!is_z_basis(psi.root_system(), psi.gamma())) return {false, "roots do not form a Z-basis of the root lattice"};
  const IntMatrix g = psi.gram();
  for (std::size_t x = 0; x < b.size(); ++x)
    for (std::size_t y = x + 1; y < b.size(); ++y)
      if (std::abs(g(x, y)) != std::abs(b(x, y)))
        return {false, "|(gamma_" + std::to_string(x) + ", gamma_" + std::to_string(y) + ")| = " +
                           std::to_string(std::abs(g(x, y))) + " but |b| = " + std::to_string(std::abs(b(x, y)))};
  return {};
}

inline bool is_companion_basis(const CompanionBasis& psi, const ExchangeMatrix& b) {
  return check_companion_basis(psi, b).ok;
}

inline void require_companion_basis(const CompanionBasis& psi, const ExchangeMatrix& b) {
  if (auto c = check_companion_basis(psi, b); !c) throw InvalidArgument("invalid companion basis: " + c.reason);
}

inline CompanionBasis sign_change(const CompanionBasis& psi, std::span<const int> vertices) {
  auto gamma = psi.gamma();
  std::vector<bool> flip(gamma.size(), false);
  for (int v : vertices) {
    if (v < 0 || static_cast<std::size_t>(v) >= gamma.size()) throw IndexError("vertex out of range");
    flip[v] = true;
  }
  for (std::size_t x = 0; x < gamma.size(); ++x)
    if (flip[x]) gamma[x] = -gamma[x];
  return CompanionBasis(psi.root_system_ptr(), std::move(gamma));
}

/// gamma_x -> w(sigma(gamma_x)).
inline CompanionBasis transform(const CompanionBasis& psi, const WeylWord& w, const DiagramAutomorphism& sigma) {
  const auto& rs = psi.root_system();
  std::vector<Root> gamma;
  gamma.reserve(psi.size());
  for (const auto& g : psi.gamma()) gamma.push_back(rs.apply(w, sigma.apply(g)));
  return CompanionBasis(psi.root_system_ptr(), std::move(gamma));
}

struct MutatedBasis {
  CompanionBasis basis;
  ExchangeMatrix matrix;
};

namespace detail {
// Reflects gamma_x in gamma_k for every x with an arrow x -> k (inward) or
// k -> x (outward).
inline MutatedBasis mutate_basis(const CompanionBasis& psi, const ExchangeMatrix& b, std::size_t k, bool inward) {
  b.check_vertex(k);
  require_companion_basis(psi, b);
  const auto& rs = psi.root_system();
  auto gamma = psi.gamma();
  for (std::size_t x = 0; x < b.size(); ++x) {
    const int e = inward ? b(x, k) : b(k, x);
    if (e > 0) gamma[x] = rs.reflect(gamma[x], psi[k]);
  }
  return {CompanionBasis(psi.root_system_ptr(), std::move(gamma)), mutate_matrix(b, k)};
}
}  // namespace detail

inline MutatedBasis mutate_inward(const CompanionBasis& psi, const ExchangeMatrix& b, std::size_t k) {
  return detail::mutate_basis(psi, b, k, true);
}

inline MutatedBasis mutate_outward(const CompanionBasis& psi, const ExchangeMatrix& b, std::size_t k) {
  return detail::mutate_basis(psi, b, k, false);
}

using DVector = std::vector<int>;

inline DVector abs_vector(std::span<const int> coeffs) {
  DVector d(coeffs.begin(), coeffs.end());
  for (int& c : d) c = std::abs(c);
  return d;
}

inline DVector d_vector(const CompanionBasis& psi, const Root& alpha) {
  if (!psi.root_system().is_root(alpha)) throw InvalidArgument("d-vector requested for a non-root");
  return abs_vector(psi.lattice().expand(alpha));
}

/// The d-vectors of all positive roots over one basis, with the bijection to
/// the roots they come from.
class DVectorSet {
 public:
  DVectorSet(DynkinType dynkin, std::vector<std::pair<Root, DVector>> entries)
      : dynkin_(dynkin), entries_(std::move(entries)) {
    for (const auto& [root, d] : entries_) sorted_.push_back(d);
    std::sort(sorted_.begin(), sorted_.end());
    if (std::adjacent_find(sorted_.begin(), sorted_.end()) != sorted_.end())
      throw ConstructionError("two positive roots share a d-vector");
  }

  const DynkinType& dynkin() const { return dynkin_; }
  std::size_t size() const { return entries_.size(); }
  /// (root, d-vector) pairs in positive-root order.
  const std::vector<std::pair<Root, DVector>>& entries() const { return entries_; }
  /// The set D, lexicographically sorted.
  const std::vector<DVector>& sorted() const { return sorted_; }

  bool contains(const DVector& d) const { return std::binary_search(sorted_.begin(), sorted_.end(), d); }

  const Root& root_of(const DVector& d) const {
    for (const auto& [root, v] : entries_)
      if (v == d) return root;
    throw InvalidArgument("vector is not in the d-vector set");
  }

  friend bool operator==(const DVectorSet& a, const DVectorSet& b) { return a.sorted_ == b.sorted_; }

 private:
  DynkinType dynkin_;
  std::vector<std::pair<Root, DVector>> entries_;
  std::vector<DVector> sorted_;
};

inline DVectorSet d_vector_set(const CompanionBasis& psi) {
  const auto lattice = psi.lattice();
  std::vector<std::pair<Root, DVector>> entries;
  for (const auto& alpha : psi.root_system().positive_roots())
    entries.emplace_back(alpha, abs_vector(lattice.expand(alpha)));
  return DVectorSet(psi.root_system().dynkin(), std::move(entries));
}

inline std::vector<int> support(const CompanionBasis& psi, const Root& alpha) {
  const auto d = d_vector(psi, alpha);
  std::vector<int> s;
  for (std::size_t x = 0; x < d.size(); ++x)
    if (d[x] != 0) s.push_back(static_cast<int>(x));
  return s;
}

/// The positive root with support equal to the string x_0 - x_1 - ... - x_t:
/// s_{gamma_{x_t}} ... s_{gamma_{x_1}}(gamma_{x_0}), negated if negative.
inline Root root_with_support_string(const CompanionBasis& psi, const ExchangeMatrix& b,
                                     std::span<const int> walk) {
  if (psi.root_system().dynkin().family != Family::A)
    throw InvalidArgument("string supports are only defined in type A");
  if (walk.empty()) throw InvalidArgument("empty walk");
  if (b.size() != psi.size()) throw InvalidArgument("basis and quiver sizes differ");
  for (int v : walk) b.check_vertex(static_cast<std::size_t>(v));
  // In a type-A triangulation quiver a walk is a string exactly when it is an
  // induced path: a relation or a backtrack would join x_{i-1} to x_{i+1}.
  for (std::size_t i = 0; i < walk.size(); ++i)
    for (std::size_t j = i + 1; j < walk.size(); ++j) {
      if (walk[i] == walk[j]) throw InvalidArgument("walk repeats a vertex");
      if ((j == i + 1) != b.adjacent(walk[i], walk[j])) throw InvalidArgument("walk is not a string of the quiver");
    }
  const auto& rs = psi.root_system();
  WeylWord w;
  for (std::size_t i = walk.size(); i-- > 1;) w.letters.push_back(psi[walk[i]]);
  Root r = rs.apply(w, psi[walk[0]]);
  return rs.classify(r) == RootClass::negative_root ? -r : r;
}

/// Assigns simple roots to the vertices of a Dynkin-shaped tree via the first
/// graph isomorphism found (vertices in order, simple indices ascending).
inline CompanionBasis initial_companion_basis(const ExchangeMatrix& b0, RootSystemPtr rs = nullptr) {
  if (!b0.is_tree()) throw ConstructionError("initial companion basis needs a tree-shaped quiver");
  const DynkinType type = dynkin_type_of(b0);
  if (!rs) rs = build_root_system(type);
  if (!(rs->dynkin() == type))
    throw ConstructionError("quiver has type " + type.to_string() + ", not " + rs->dynkin().to_string());

  const std::size_t n = b0.size();
  const IntMatrix& c = rs->cartan();
  std::vector<int> iso(n, -1);
  std::vector<bool> used(n, false);
  auto assign = [&](auto&& self, std::size_t x) -> bool {
    if (x == n) return true;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      bool ok = true;
      for (std::size_t y = 0; y < x && ok; ++y) ok = b0.adjacent(x, y) == (c(i, static_cast<std::size_t>(iso[y])) != 0);
      if (!ok) continue;
      used[i] = true;
      iso[x] = static_cast<int>(i);
      if (self(self, x + 1)) return true;
      used[i] = false;
    }
    return false;
  };
  if (!assign(assign, 0)) throw ConstructionError("quiver is not an orientation of the Dynkin diagram");

  std::vector<Root> gamma;
  for (std::size_t x = 0; x < n; ++x) gamma.push_back(rs->simple_root(static_cast<std::size_t>(iso[x])));
  return CompanionBasis(std::move(rs), std::move(gamma));
}

/// Breadth-first search over the mutation class, memoised on canonical forms,
/// for mutations k_1, ..., k_m taking B to a quiver whose underlying graph is a tree.
inline std::vector<std::size_t> find_mutation_sequence_to_tree(const ExchangeMatrix& b,
                                                               std::size_t max_states = 500000) {
  if (b.is_tree()) return {};
  if (!b.is_connected()) throw ConstructionError("quiver is disconnected");
  if (!is_finite_type(b)) throw ConstructionError("quiver is not of finite type");

  struct Node {
    ExchangeMatrix m;
    std::size_t parent;
    std::size_t k;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept { return VectorHash{}(v); }
  };
  std::vector<Node> nodes{{b, 0, 0}};
  std::unordered_set<std::vector<int>, KeyHash> seen{canonical_form(b)};
  std::deque<std::size_t> queue{0};

  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < b.size(); ++k) {
      ExchangeMatrix next = mutate_matrix(nodes[i].m, k);
      if (!seen.insert(canonical_form(next)).second) continue;
      const bool done = next.is_tree();
      nodes.push_back({std::move(next), i, k});
      if (done) {
        std::vector<std::size_t> seq;
        for (std::size_t j = nodes.size() - 1; j != 0; j = nodes[j].parent) seq.push_back(nodes[j].k);
        std::reverse(seq.begin(), seq.end());
        return seq;
      }
      if (nodes.size() > max_states) throw ConstructionError("mutation search exhausted its state budget");
      queue.push_back(nodes.size() - 1);
    }
  }
  throw ConstructionError("mutation class contains no tree-shaped quiver");
}

/// A companion basis for a connected finite-type B: seed the simple system at a
/// tree in the mutation class, then mutate inwardly back along the path to B.
inline CompanionBasis companion_basis_for(const ExchangeMatrix& b, RootSystemPtr rs = nullptr) {
  const auto seq = find_mutation_sequence_to_tree(b);
  const ExchangeMatrix tree = mutate_sequence(b, seq);
  if (!rs) rs = build_root_system(dynkin_type_of(b));
  CompanionBasis psi = initial_companion_basis(tree, std::move(rs));
  ExchangeMatrix cur = tree;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    auto step = mutate_inward(psi, cur, *it);
    psi = std::move(step.basis);
    cur = std::move(step.matrix);
  }
  if (!(cur == b)) throw ConstructionError("mutation replay did not return to the input quiver");
  require_companion_basis(psi, b);
  return psi;
}

/// d_alpha over psi  ->  d_alpha over the inward mutation of psi at k.
inline std::map<DVector, DVector> mutation_map_phi_in(const CompanionBasis& psi, const ExchangeMatrix& b,
                                                      std::size_t k) {
  const auto mutated = mutate_inward(psi, b, k);
  const auto before = d_vector_set(psi);
  const auto after = d_vector_set(mutated.basis);
  std::map<DVector, DVector> phi;
  for (std::size_t i = 0; i < before.size(); ++i) phi.emplace(before.entries()[i].second, after.entries()[i].second);
  return phi;
}

/// Type-A rule: only the k-component changes, to |-d_k + sum_{x -> k} d_x|.
inline DVector phi_in_type_a_closed_form(const ExchangeMatrix& b, std::size_t k, const DVector& d,
                                         const DVectorSet& domain) {
  b.check_vertex(k);
  if (domain.dynkin().family != Family::A) throw InvalidArgument("closed form only holds in type A");
  if (d.size() != b.size()) throw InvalidArgument("d-vector length does not match the quiver");
  if (!domain.contains(d)) throw InvalidArgument("vector is not a d-vector of this quiver");
  int s = -d[k];
  for (std::size_t x = 0; x < b.size(); ++x)
    if (b(x, k) > 0) s += d[x];
  DVector out = d;
  out[k] = std::abs(s);
  return out;
}

inline DVector phi_in_type_a_closed_form(const ExchangeMatrix& b, std::size_t k, const DVector& d) {
  return phi_in_type_a_closed_form(b, k, d, d_vector_set(companion_basis_for(b)));
}

/// |-|a_k| + sum_{x->k} |a_x|| - |a_k + sum_{x->k} a_x (gamma_x, gamma_k)|
/// for alpha = sum a_x gamma_x. Always even.
inline int even_difference(const CompanionBasis& psi, const ExchangeMatrix& b, std::size_t k, const Root& alpha) {
  b.check_vertex(k);
  const auto& rs = psi.root_system();
  const auto a = psi.lattice().expand(alpha);
  int lhs = -std::abs(a[k]);
  int rhs = a[k];
  for (std::size_t x = 0; x < b.size(); ++x)
    if (b(x, k) > 0) {
      lhs += std::abs(a[x]);
      rhs += a[x] * rs.inner_product(psi[x], psi[k]);
    }
  return std::abs(lhs) - std::abs(rhs);
}

}  // namespace cbasis
