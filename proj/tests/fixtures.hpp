#pragma once

#include <random>
#include <utility>
#include <vector>

#include "cbasis/companion_basis.hpp"
#include "cbasis/quiver.hpp"
#include "cbasis/root_system.hpp"
#include "cbasis/type_a.hpp"

namespace fixtures {

using namespace cbasis;

/// The worked A4 example: 1 -> 2, 2 -> 3, 3 -> 4, 4 -> 2 (0-based here).
inline ExchangeMatrix example_quiver() { return ExchangeMatrix::from_arrows(4, {{0, 1}, {1, 2}, {2, 3}, {3, 1}}); }

/// gamma = {-a1, -a2-a3, a3, a4}.
inline CompanionBasis example_basis() {
  return CompanionBasis(build_root_system(DynkinType::make(Family::A, 4)),
                        {Root{-1, 0, 0, 0}, Root{0, -1, -1, 0}, Root{0, 0, 1, 0}, Root{0, 0, 0, 1}});
}

/// d-vectors listed in the example, one per positive root.
inline std::vector<std::vector<int>> example_table() {
  return {{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 0},
          {0, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}, {0, 1, 0, 1}, {1, 1, 0, 1}};
}

/// Triangulation of the heptagon realising the example quiver with the
/// example's vertex order: (5,7), (1,5), (3,5), (1,3).
inline type_a::Triangulation example_triangulation() { return {4, {{5, 7}, {1, 5}, {3, 5}, {1, 3}}}; }

inline ExchangeMatrix linear_quiver(std::size_t n) {
  std::vector<std::pair<int, int>> arrows;
  for (std::size_t i = 0; i + 1 < n; ++i) arrows.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
  return ExchangeMatrix::from_arrows(n, arrows);
}

/// Orientation of the Dynkin diagram with simple labels as vertices.
template <class Rng>
ExchangeMatrix dynkin_orientation(const DynkinType& t, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::pair<int, int>> arrows;
  for (auto [i, j] : dynkin_edges(t)) arrows.push_back(coin(rng) ? std::pair{i, j} : std::pair{j, i});
  return ExchangeMatrix::from_arrows(static_cast<std::size_t>(t.rank), arrows);
}

inline ExchangeMatrix dynkin_orientation(const DynkinType& t) {
  std::vector<std::pair<int, int>> arrows;
  for (auto [i, j] : dynkin_edges(t)) arrows.emplace_back(i, j);
  return ExchangeMatrix::from_arrows(static_cast<std::size_t>(t.rank), arrows);
}

/// Random (basis, quiver) pair: simple system on a random Dynkin orientation
/// followed by `steps` random inward/outward mutations.
template <class Rng>
std::pair<CompanionBasis, ExchangeMatrix> random_pair(const RootSystemPtr& rs, std::size_t steps, Rng& rng) {
  ExchangeMatrix b = dynkin_orientation(rs->dynkin(), rng);
  std::vector<Root> simple;
  for (std::size_t i = 0; i < rs->rank(); ++i) simple.push_back(rs->simple_root(i));
  CompanionBasis psi(rs, simple);
  std::uniform_int_distribution<std::size_t> vertex(0, rs->rank() - 1);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t s = 0; s < steps; ++s) {
    auto m = coin(rng) ? mutate_inward(psi, b, vertex(rng)) : mutate_outward(psi, b, vertex(rng));
    psi = std::move(m.basis);
    b = std::move(m.matrix);
  }
  return {psi, b};
}

template <class Rng>
std::vector<int> random_subset(std::size_t n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> s;
  for (std::size_t x = 0; x < n; ++x)
    if (coin(rng)) s.push_back(static_cast<int>(x));
  return s;
}

template <class Rng>
WeylWord random_word(const RootSystem& rs, std::size_t length, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, rs.positive_roots().size() - 1);
  std::bernoulli_distribution coin(0.5);
  WeylWord w;
  for (std::size_t i = 0; i < length; ++i) {
    const Root& r = rs.positive_roots()[pick(rng)];
    w.letters.push_back(coin(rng) ? r : -r);
  }
  return w;
}

}  // namespace fixtures
