#pragma once

// File formats:
//   exchange matrix    {"n": int, "b": [[int]]}  or  {"n": int, "arrows": [[s, t]]}
//   companion basis    {"type": "A4", "quiver": <exchange matrix>, "gamma": [[int]]}
//   d-vector set       [[int]] sorted lexicographically
//   triangulation      {"n": int, "diagonals": [[i, j]]}, 1-based polygon vertices
// Output is canonical: sorted keys, no whitespace.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cbasis/companion_basis.hpp"
#include "cbasis/error.hpp"
#include "cbasis/quiver.hpp"
#include "cbasis/root_system.hpp"
#include "cbasis/type_a.hpp"

namespace cbasis::io {

using Json = nlohmann::json;

inline std::string canonical_dump(const Json& j) { return j.dump(); }

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, canonical_dump(j) + "\n"); }

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const IndexError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

inline Json matrix_rows(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<int>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

}  // namespace detail

inline Json to_json(const ExchangeMatrix& b) {
  return Json{{"n", b.size()}, {"b", detail::matrix_rows(b.matrix())}};
}

inline ExchangeMatrix exchange_matrix_from_json(const Json& j) {
  return detail::guarded("exchange matrix", [&] {
    if (!j.is_object()) throw ParseError("exchange matrix: expected an object");
    const auto n = j.at("n").get<std::size_t>();
    if (n == 0) throw ParseError("exchange matrix: n must be positive");
    if (j.contains("b")) {
      const auto rows = j.at("b").get<std::vector<std::vector<int>>>();
      if (rows.size() != n) throw ParseError("exchange matrix: expected " + std::to_string(n) + " rows");
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw ParseError("exchange matrix: row " + std::to_string(i) + " has wrong length");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k];
      }
      return ExchangeMatrix(std::move(m));
    }
    if (j.contains("arrows")) {
      std::vector<std::pair<int, int>> arrows;
      for (const auto& a : j.at("arrows")) {
        const auto st = a.get<std::vector<int>>();
        if (st.size() != 2) throw ParseError("exchange matrix: arrows are [source, target] pairs");
        arrows.emplace_back(st[0], st[1]);
      }
      return ExchangeMatrix::from_arrows(n, arrows);
    }
    throw ParseError("exchange matrix: needs \"b\" or \"arrows\"");
  });
}

inline Json to_json(const Root& r) { return r.coords(); }

inline Json to_json(const CompanionBasis& psi, const ExchangeMatrix& b) {
  Json gamma = Json::array();
  for (const auto& g : psi.gamma()) gamma.push_back(to_json(g));
  return Json{{"type", psi.root_system().dynkin().to_string()}, {"quiver", to_json(b)}, {"gamma", gamma}};
}

struct BasisFile {
  CompanionBasis basis;
  ExchangeMatrix quiver;
};

/// Loads and shape-checks a basis file; companion validity is left to the caller.
inline BasisFile companion_basis_from_json(const Json& j) {
  return detail::guarded("companion basis", [&] {
    const auto type = DynkinType::parse(j.at("type").get<std::string>());
    auto quiver = exchange_matrix_from_json(j.at("quiver"));
    std::vector<Root> gamma;
    for (const auto& g : j.at("gamma")) gamma.emplace_back(g.get<std::vector<int>>());
    auto rs = build_root_system(type);
    for (const auto& g : gamma)
      if (g.rank() != rs->rank()) throw ParseError("companion basis: gamma entries must have length " + std::to_string(rs->rank()));
    return BasisFile{CompanionBasis(std::move(rs), std::move(gamma)), std::move(quiver)};
  });
}

inline Json to_json(const DVectorSet& d) {
  Json out = Json::array();
  for (const auto& v : d.sorted()) out.push_back(v);
  return out;
}

inline Json to_json(const type_a::Triangulation& t) {
  Json diags = Json::array();
  for (const auto& d : t.diagonals) diags.push_back({d.i, d.j});
  return Json{{"n", t.n}, {"diagonals", diags}};
}

inline type_a::Triangulation triangulation_from_json(const Json& j) {
  return detail::guarded("triangulation", [&] {
    type_a::Triangulation t;
    t.n = j.at("n").get<int>();
    for (const auto& d : j.at("diagonals")) {
      const auto ij = d.get<std::vector<int>>();
      if (ij.size() != 2) throw ParseError("triangulation: diagonals are [i, j] pairs");
      t.diagonals.push_back({std::min(ij[0], ij[1]), std::max(ij[0], ij[1])});
    }
    t.validate();
    return t;
  });
}

inline Json to_json(const type_a::TriangulationReport& r) {
  return Json{{"diagonals", to_json(r.triangulation).at("diagonals")},
              {"quiver", to_json(r.quiver)},
              {"strong", r.strong},
              {"n_strings", r.n_strings}};
}

}  // namespace cbasis::io
