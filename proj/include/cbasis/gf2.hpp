#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cbasis::gf2 {

/// Bit-packed row of a linear system over GF(2).
class Row {
 public:
  explicit Row(std::size_t nvars) : words_((nvars + 63) / 64, 0) {}

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  Row& operator^=(const Row& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Equation {
  Row lhs;
  bool rhs;
};

/// Result of elimination: either a solution, or the index of the first input
/// equation that reduced to 0 = 1.
struct Solution {
  std::vector<bool> values;
  std::optional<std::size_t> inconsistent_equation;
};

/// Gaussian elimination over GF(2). Free variables are set to 0, so the
/// solution is a deterministic function of the system.
inline Solution solve(std::size_t nvars, std::vector<Equation> equations) {
  std::vector<Equation> basis;
  std::vector<std::size_t> pivot_of;  // pivot column of each basis row

  for (std::size_t e = 0; e < equations.size(); ++e) {
    Equation eq = std::move(equations[e]);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (eq.lhs.get(pivot_of[b])) {
        eq.lhs ^= basis[b].lhs;
        eq.rhs ^= basis[b].rhs;
      }
    std::size_t pivot = 0;
    while (pivot < nvars && !eq.lhs.get(pivot)) ++pivot;
    if (pivot == nvars) {
      if (eq.rhs) return {{}, e};
      continue;
    }
    // Keep the basis fully reduced in the new pivot column.
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (basis[b].lhs.get(pivot)) {
        basis[b].lhs ^= eq.lhs;
        basis[b].rhs ^= eq.rhs;
      }
    basis.push_back(std::move(eq));
    pivot_of.push_back(pivot);
  }

  Solution sol{std::vector<bool>(nvars, false), std::nullopt};
  for (std::size_t b = 0; b < basis.size(); ++b) sol.values[pivot_of[b]] = basis[b].rhs;
  return sol;
}

}  // namespace cbasis::gf2
