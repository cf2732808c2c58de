#pragma once

// Command-line front end. Exit codes: 0 success, 2 parse/usage, 3 index,
// 4 construction/search, 5 verification failure.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cbasis/companion_basis.hpp"
#include "cbasis/error.hpp"
#include "cbasis/json_io.hpp"
#include "cbasis/quiver.hpp"
#include "cbasis/root_system.hpp"
#include "cbasis/type_a.hpp"

namespace cbasis::cli {

enum ExitCode : int { kOk = 0, kParse = 2, kIndex = 3, kConstruction = 4, kVerification = 5 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string type;
  std::optional<int> k;  // 1-based vertex label
  std::string sequence;  // comma-separated 1-based labels
  int n = 0;
  std::string mode = "exhaustive";
  std::uint64_t seed = 1;
  int samples = 50;
  int walk_length = 0;
  int jobs = 1;
  bool verbose = false;
};

inline constexpr int kExhaustiveCap = 6;

namespace detail {

inline void emit(const RunConfig& cfg, const io::Json& j, std::ostream& out) {
  if (cfg.output.empty())
    out << io::canonical_dump(j) << '\n';
  else
    io::write_json_file(cfg.output, j);
}

inline io::Json require_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ParseError("--input is required for '" + cfg.command + "'");
  return io::read_json_file(cfg.input);
}

inline std::vector<std::size_t> parse_vertices(const RunConfig& cfg, std::size_t n) {
  std::vector<int> labels;
  if (!cfg.sequence.empty()) {
    std::stringstream ss(cfg.sequence);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        labels.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw ParseError("bad vertex label '" + tok + "' in --sequence");
      }
    }
  } else if (cfg.k) {
    labels.push_back(*cfg.k);
  } else {
    throw ParseError("mutate needs --k or --sequence");
  }
  std::vector<std::size_t> ks;
  for (int label : labels) {
    if (label < 1 || static_cast<std::size_t>(label) > n)
      throw IndexError("vertex " + std::to_string(label) + " outside 1.." + std::to_string(n));
    ks.push_back(static_cast<std::size_t>(label - 1));
  }
  return ks;
}

inline int cmd_mutate(const RunConfig& cfg, std::ostream& out) {
  const auto b = io::exchange_matrix_from_json(require_input(cfg));
  const auto ks = parse_vertices(cfg, b.size());
  emit(cfg, io::to_json(mutate_sequence(b, ks)), out);
  return kOk;
}

inline int cmd_recognize(const RunConfig& cfg, std::ostream& out) {
  const auto b = io::exchange_matrix_from_json(require_input(cfg));
  const auto r = recognize(b);
  io::Json j{{"finite_type", r.finite_type}};
  if (r.finite_type) {
    j["connected"] = b.is_connected();
    if (b.is_connected()) j["type"] = dynkin_type_of(b).to_string();
  } else {
    j["failing_condition"] = *r.failing_condition;
    if (r.failing_cycle) j["cycle"] = r.failing_cycle->vertices;
  }
  emit(cfg, j, out);
  return kOk;
}

inline int cmd_companion(const RunConfig& cfg, std::ostream& out) {
  const auto b = io::exchange_matrix_from_json(require_input(cfg));
  const auto type = dynkin_type_of(b);
  if (!cfg.type.empty() && !(DynkinType::parse(cfg.type) == type))
    throw ConstructionError("quiver has type " + type.to_string() + ", not " + cfg.type);
  const auto psi = companion_basis_for(b, build_root_system(type));
  require_companion_basis(psi, b);
  emit(cfg, io::to_json(psi, b), out);
  return kOk;
}

inline int cmd_dvectors(const RunConfig& cfg, std::ostream& out) {
  const auto file = io::companion_basis_from_json(require_input(cfg));
  if (auto c = check_companion_basis(file.basis, file.quiver); !c)
    throw ConstructionError("invalid companion basis: " + c.reason);
  const auto set = d_vector_set(file.basis);
  auto entries = set.entries();
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  io::Json pairs = io::Json::array();
  for (const auto& [root, d] : entries) pairs.push_back({{"dvector", d}, {"root", root.coords()}});
  emit(cfg, io::Json{{"type", set.dynkin().to_string()}, {"dvectors", io::to_json(set)}, {"pairs", pairs}}, out);
  return kOk;
}

// Extra basis for the same quiver: random sign change, diagram automorphism
// and Weyl word of the requested length.
template <class Rng>
CompanionBasis perturbed_basis(const CompanionBasis& psi, int walk_length, Rng& rng) {
  const auto& rs = psi.root_system();
  std::uniform_int_distribution<std::size_t> root_pick(0, rs.positive_roots().size() - 1);
  WeylWord w;
  for (int i = 0; i < walk_length; ++i) w.letters.push_back(rs.positive_roots()[root_pick(rng)]);
  const auto autos = diagram_automorphisms(rs.dynkin());
  std::uniform_int_distribution<std::size_t> auto_pick(0, autos.size() - 1);
  std::vector<int> flips;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t x = 0; x < psi.size(); ++x)
    if (coin(rng)) flips.push_back(static_cast<int>(x));
  return transform(sign_change(psi, flips), w, autos[auto_pick(rng)]);
}

inline int cmd_verify_type_a(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n < 1) throw ParseError("--n must be at least 1");
  std::vector<type_a::Triangulation> work;
  if (cfg.mode == "exhaustive") {
    if (cfg.n > kExhaustiveCap)
      throw ParseError("exhaustive mode supports n <= " + std::to_string(kExhaustiveCap) + "; use --mode sample");
    work = type_a::enumerate_triangulations(cfg.n);
  } else if (cfg.mode == "sample") {
    if (cfg.samples < 1) throw ParseError("--samples must be positive");
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.samples; ++i) work.push_back(type_a::random_triangulation(cfg.n, rng));
  } else {
    throw ParseError("--mode must be 'exhaustive' or 'sample'");
  }

  const auto rs = build_root_system(DynkinType::make(Family::A, cfg.n));
  std::vector<type_a::TriangulationReport> reports(work.size());
  std::vector<bool> extra_ok(work.size(), true);
  std::mutex log_mutex;
  const unsigned jobs = static_cast<unsigned>(std::clamp(cfg.jobs, 1, 64));
  auto worker = [&](unsigned id) {
    for (std::size_t i = id; i < work.size(); i += jobs) {
      reports[i] = type_a::verify_triangulation(work[i], rs);
      if (cfg.walk_length > 0) {
        std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
        const auto psi = perturbed_basis(companion_basis_for(reports[i].quiver, rs), cfg.walk_length, rng);
        extra_ok[i] = is_companion_basis(psi, reports[i].quiver) &&
                      type_a::is_strong_companion_basis(psi, reports[i].quiver);
      }
      if (cfg.verbose) {
        std::lock_guard lock(log_mutex);
        err << "triangulation " << i + 1 << "/" << work.size() << (reports[i].strong ? " strong" : " NOT strong")
            << '\n';
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned id = 1; id < jobs; ++id) threads.emplace_back(worker, id);
  worker(0);
  for (auto& t : threads) t.join();

  std::vector<std::pair<std::string, bool>> records;
  std::size_t strong = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const bool ok = reports[i].strong && extra_ok[i];
    strong += ok;
    records.emplace_back(io::canonical_dump(io::to_json(reports[i])), ok);
  }
  std::sort(records.begin(), records.end());
  if (!cfg.output.empty()) {
    std::string text;
    for (const auto& [line, ok] : records) text += line + '\n';
    io::write_text_file(cfg.output, text);
  }
  io::Json summary{{"n", cfg.n},
                   {"mode", cfg.mode},
                   {"seed", cfg.seed},
                   {"walk_length", cfg.walk_length},
                   {"checked", reports.size()},
                   {"strong", strong},
                   {"failures", reports.size() - strong}};
  out << io::canonical_dump(summary) << '\n';
  return strong == reports.size() ? kOk : kVerification;
}

}  // namespace detail

/// Runs one command and maps library errors onto exit codes.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "mutate") return detail::cmd_mutate(cfg, out);
    if (cfg.command == "recognize") return detail::cmd_recognize(cfg, out);
    if (cfg.command == "companion") return detail::cmd_companion(cfg, out);
    if (cfg.command == "dvectors") return detail::cmd_dvectors(cfg, out);
    if (cfg.command == "verify-type-a") return detail::cmd_verify_type_a(cfg, out, err);
    err << "unknown command '" << cfg.command << "'\n";
    return kParse;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const IndexError& e) {
    err << "error: " << e.what() << '\n';
    return kIndex;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConstruction;
  }
}

/// Parses argv into a RunConfig and runs it.
inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  CLI::App app{"Companion bases for quivers of cluster-tilted algebras"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input JSON file");
    sub->add_option("--output", cfg.output, "output file (default: stdout)");
    sub->add_flag("--verbose", cfg.verbose, "progress on stderr");
  };
  auto* mutate = app.add_subcommand("mutate", "mutate an exchange matrix at one vertex or a sequence");
  add_io(mutate);
  mutate->add_option("--k", cfg.k, "vertex to mutate at (1-based)");
  mutate->add_option("--sequence", cfg.sequence, "comma-separated vertices, applied left to right (1-based)");

  auto* recognize = app.add_subcommand("recognize", "finite-type test and Dynkin type");
  add_io(recognize);

  auto* companion = app.add_subcommand("companion", "construct a companion basis");
  add_io(companion);
  companion->add_option("--type", cfg.type, "expected Dynkin type, e.g. A4");

  auto* dvectors = app.add_subcommand("dvectors", "d-vectors of the positive roots over a basis");
  add_io(dvectors);

  auto* verify = app.add_subcommand("verify-type-a", "check strongness over triangulations of the (n+3)-gon");
  add_io(verify);
  verify->add_option("--n", cfg.n, "rank n")->required();
  verify->add_option("--mode", cfg.mode, "exhaustive | sample");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--samples", cfg.samples, "number of sampled triangulations");
  verify->add_option("--walk-length", cfg.walk_length, "length of a random Weyl word for an extra basis per quiver");
  verify->add_option("--jobs", cfg.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

}  // namespace cbasis::cli
