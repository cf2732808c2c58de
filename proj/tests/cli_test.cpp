#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cbasis/cli.hpp"
#include "cbasis/json_io.hpp"
#include "fixtures.hpp"

using namespace cbasis;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cbasis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    io::write_text_file(path(name), text);
    return path(name);
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "cbasis");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::main_entry(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  io::Json out_json() const { return io::parse_json(out_.str()); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::string matrix_file(const ExchangeMatrix& b) { return io::canonical_dump(io::to_json(b)) + "\n"; }

}  // namespace

TEST(JsonIoTest, ExchangeMatrixRoundTrip) {
  const auto b = fixtures::example_quiver();
  const auto j = io::to_json(b);
  EXPECT_EQ(io::canonical_dump(j), R"({"b":[[0,1,0,0],[-1,0,1,-1],[0,-1,0,1],[0,1,-1,0]],"n":4})");
  EXPECT_EQ(io::exchange_matrix_from_json(j), b);
  EXPECT_EQ(io::exchange_matrix_from_json(io::parse_json(R"({"n":4,"arrows":[[0,1],[1,2],[2,3],[3,1]]})")), b);
}

TEST(JsonIoTest, ExchangeMatrixErrorsAreParseErrors) {
  for (const char* bad : {R"([])", R"({"n":2})", R"({"n":2,"b":[[0,1],[1,0]]})", R"({"n":2,"b":[[0,1]]})",
                          R"({"n":0,"b":[]})", R"({"n":2,"arrows":[[0,2]]})", R"({"n":2,"arrows":[[0]]})",
                          R"({"n":"two","b":[]})"})
    EXPECT_THROW(io::exchange_matrix_from_json(io::parse_json(bad)), ParseError) << bad;
  EXPECT_THROW(io::parse_json("{"), ParseError);
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), ParseError);
}

TEST(JsonIoTest, CompanionBasisRoundTrip) {
  const auto psi = fixtures::example_basis();
  const auto b = fixtures::example_quiver();
  const auto j = io::to_json(psi, b);
  EXPECT_EQ(j.at("type"), "A4");
  const auto back = io::companion_basis_from_json(j);
  EXPECT_EQ(back.basis, psi);
  EXPECT_EQ(back.quiver, b);
  EXPECT_EQ(io::canonical_dump(io::to_json(back.basis, back.quiver)), io::canonical_dump(j));

  auto bad = j;
  bad["gamma"][0] = {2, 0, 0, 0};
  EXPECT_THROW(io::companion_basis_from_json(bad), ParseError);
  bad = j;
  bad["type"] = "Q4";
  EXPECT_THROW(io::companion_basis_from_json(bad), ParseError);
  bad = j;
  bad["gamma"][0] = {1, 0};
  EXPECT_THROW(io::companion_basis_from_json(bad), ParseError);
}

TEST(JsonIoTest, TriangulationRoundTrip) {
  const auto t = fixtures::example_triangulation();
  const auto j = io::to_json(t);
  EXPECT_EQ(io::canonical_dump(j), R"({"diagonals":[[5,7],[1,5],[3,5],[1,3]],"n":4})");
  EXPECT_EQ(io::triangulation_from_json(j), t);
  EXPECT_THROW(io::triangulation_from_json(io::parse_json(R"({"n":2,"diagonals":[[1,3],[2,4]]})")), ParseError);

  const auto rep = type_a::verify_triangulation(t);
  const auto r = io::to_json(rep);
  EXPECT_EQ(r.at("strong"), true);
  EXPECT_EQ(r.at("n_strings"), 10);
  EXPECT_EQ(r.at("quiver"), io::to_json(fixtures::example_quiver()));
}

TEST_F(CliTest, MutatePathMiddle) {
  const auto in = write("a3.json", matrix_file(fixtures::linear_quiver(3)));
  ASSERT_EQ(run({"mutate", "--input", in, "--k", "2"}), 0) << err_.str();
  EXPECT_EQ(io::exchange_matrix_from_json(out_json()), ExchangeMatrix::from_arrows(3, {{0, 2}, {2, 1}, {1, 0}}));
}

TEST_F(CliTest, MutateTwiceIsByteIdentical) {
  const auto in = write("ex.json", matrix_file(fixtures::example_quiver()));
  ASSERT_EQ(run({"mutate", "--input", in, "--k", "2", "--output", path("once.json")}), 0) << err_.str();
  ASSERT_EQ(run({"mutate", "--input", path("once.json"), "--k", "2", "--output", path("twice.json")}), 0);
  EXPECT_EQ(read(path("twice.json")), read(in));
  ASSERT_EQ(run({"mutate", "--input", in, "--sequence", "2,2,2,2", "--output", path("seq.json")}), 0);
  EXPECT_EQ(read(path("seq.json")), read(in));
}

TEST_F(CliTest, MutateErrors) {
  const auto in = write("ex.json", matrix_file(fixtures::example_quiver()));
  EXPECT_EQ(run({"mutate", "--input", in, "--k", "5"}), 3);
  EXPECT_EQ(run({"mutate", "--input", in, "--k", "0"}), 3);
  EXPECT_EQ(run({"mutate", "--input", in, "--sequence", "1,x"}), 2);
  EXPECT_EQ(run({"mutate", "--input", in}), 2);
  EXPECT_EQ(run({"mutate", "--k", "1"}), 2);
  EXPECT_EQ(run({"mutate", "--input", write("bad.json", R"({"n":2,"b":[[0,1],[1,0]]})"), "--k", "1"}), 2);
  EXPECT_EQ(run({"mutate", "--input", write("garbage.json", "not json"), "--k", "1"}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({}), 2);
}

TEST_F(CliTest, RecognizeVerdicts) {
  ASSERT_EQ(run({"recognize", "--input", write("ex.json", matrix_file(fixtures::example_quiver()))}), 0);
  EXPECT_EQ(out_.str(), "{\"connected\":true,\"finite_type\":true,\"type\":\"A4\"}\n");

  ASSERT_EQ(run({"recognize", "--input",
                 write("sq.json", R"({"n":4,"arrows":[[0,1],[2,1],[2,3],[0,3]]})")}),
            0);
  EXPECT_EQ(out_json().at("finite_type"), false);
  EXPECT_EQ(out_json().at("failing_condition"), "chordless cycle not cyclically oriented");
  EXPECT_EQ(out_json().at("cycle"), io::Json({0, 1, 2, 3}));

  ASSERT_EQ(run({"recognize", "--input", write("one.json", R"({"n":1,"b":[[0]]})")}), 0);
  EXPECT_EQ(out_json().at("type"), "A1");

  ASSERT_EQ(run({"recognize", "--input", write("two.json", R"({"n":2,"b":[[0,0],[0,0]]})")}), 0);
  EXPECT_EQ(out_json().at("connected"), false);
  EXPECT_FALSE(out_json().contains("type"));
}

TEST_F(CliTest, CompanionOutputs) {
  ASSERT_EQ(run({"companion", "--input", write("lin.json", matrix_file(fixtures::linear_quiver(4))), "--type", "A4"}),
            0)
      << err_.str();
  const auto lin = io::companion_basis_from_json(out_json());
  EXPECT_EQ(lin.basis.gamma(), (std::vector<Root>{Root{1, 0, 0, 0}, Root{0, 1, 0, 0}, Root{0, 0, 1, 0}, Root{0, 0, 0, 1}}));

  ASSERT_EQ(run({"companion", "--input", write("ex.json", matrix_file(fixtures::example_quiver()))}), 0);
  const auto ex = io::companion_basis_from_json(out_json());
  EXPECT_TRUE(is_companion_basis(ex.basis, ex.quiver));

  std::mt19937 rng(83);
  const auto d5 = build_root_system(DynkinType::make(Family::D, 5));
  const auto b = fixtures::random_pair(d5, 15, rng).second;
  ASSERT_EQ(run({"companion", "--input", write("d5.json", matrix_file(b)), "--type", "D5"}), 0) << err_.str();
  const auto d = io::companion_basis_from_json(out_json());
  EXPECT_TRUE(is_companion_basis(d.basis, b));

  EXPECT_EQ(run({"companion", "--input", path("lin.json"), "--type", "D4"}), 4);
  EXPECT_EQ(run({"companion", "--input", write("sq.json", R"({"n":4,"arrows":[[0,1],[2,1],[2,3],[0,3]]})")}), 4);
  EXPECT_EQ(run({"companion", "--input", write("dis.json", R"({"n":2,"b":[[0,0],[0,0]]})")}), 4);
}

TEST_F(CliTest, DVectorsOfExample) {
  const auto in = write("basis.json", io::canonical_dump(io::to_json(fixtures::example_basis(), fixtures::example_quiver())));
  ASSERT_EQ(run({"dvectors", "--input", in}), 0) << err_.str();
  const auto j = out_json();
  auto table = fixtures::example_table();
  std::sort(table.begin(), table.end());
  EXPECT_EQ(j.at("dvectors").get<std::vector<std::vector<int>>>(), table);
  EXPECT_EQ(j.at("pairs").size(), 10u);
  EXPECT_EQ(j.at("type"), "A4");
  for (const auto& p : j.at("pairs")) {
    const Root root(p.at("root").get<std::vector<int>>());
    EXPECT_EQ(d_vector(fixtures::example_basis(), root), p.at("dvector").get<DVector>());
  }
}

TEST_F(CliTest, DVectorsOfSimpleSystemAndErrors) {
  const auto rs = build_root_system(DynkinType::make(Family::A, 2));
  const CompanionBasis pi(rs, {Root{1, 0}, Root{0, 1}});
  ASSERT_EQ(run({"dvectors", "--input", write("a2.json", io::canonical_dump(io::to_json(pi, fixtures::linear_quiver(2))))}),
            0);
  EXPECT_EQ(out_json().at("dvectors"), io::Json({{0, 1}, {1, 0}, {1, 1}}));

  // Pi against a quiver with no arrow: not a companion basis.
  EXPECT_EQ(run({"dvectors", "--input", write("bad.json", io::canonical_dump(io::to_json(pi, ExchangeMatrix::zero(2))))}),
            4);
  EXPECT_EQ(run({"dvectors", "--input", write("shape.json", R"({"type":"A2","quiver":{"n":2,"b":[[0,1],[-1,0]]}})")}), 2);
}

TEST_F(CliTest, DVectorsCountEqualsPositiveRoots) {
  std::mt19937 rng(89);
  for (auto t : {DynkinType::make(Family::D, 5), DynkinType::make(Family::E, 6)}) {
    const auto rs = build_root_system(t);
    const auto [psi, b] = fixtures::random_pair(rs, 20, rng);
    ASSERT_EQ(run({"dvectors", "--input", write("p.json", io::canonical_dump(io::to_json(psi, b)))}), 0);
    EXPECT_EQ(out_json().at("dvectors").size(), t.num_positive_roots());
  }
}

TEST_F(CliTest, VerifyTypeAExhaustive) {
  ASSERT_EQ(run({"verify-type-a", "--n", "2"}), 0) << err_.str();
  EXPECT_EQ(out_json().at("checked"), 5);
  EXPECT_EQ(out_json().at("strong"), 5);

  ASSERT_EQ(run({"verify-type-a", "--n", "4", "--jobs", "4", "--output", path("n4.jsonl")}), 0);
  EXPECT_EQ(out_json().at("strong"), 42);
  EXPECT_EQ(out_json().at("failures"), 0);
  const auto text = read(path("n4.jsonl"));
  std::istringstream lines(text);
  std::string line;
  std::vector<std::string> records;
  while (std::getline(lines, line)) {
    const auto j = io::parse_json(line);
    EXPECT_EQ(j.at("strong"), true);
    EXPECT_EQ(j.at("n_strings"), 10);
    records.push_back(line);
  }
  EXPECT_EQ(records.size(), 42u);
  EXPECT_TRUE(std::is_sorted(records.begin(), records.end()));

  ASSERT_EQ(run({"verify-type-a", "--n", "4", "--jobs", "1", "--output", path("n4_serial.jsonl")}), 0);
  EXPECT_EQ(read(path("n4_serial.jsonl")), text);
}

TEST_F(CliTest, VerifyTypeASampled) {
  ASSERT_EQ(run({"verify-type-a", "--n", "5", "--mode", "sample", "--samples", "50", "--seed", "1"}), 0);
  const auto first = out_.str();
  EXPECT_EQ(out_json().at("checked"), 50);
  EXPECT_EQ(out_json().at("strong"), 50);
  EXPECT_EQ(out_json().at("seed"), 1);
  ASSERT_EQ(run({"verify-type-a", "--n", "5", "--mode", "sample", "--samples", "50", "--seed", "1"}), 0);
  EXPECT_EQ(out_.str(), first);

  ASSERT_EQ(run({"verify-type-a", "--n", "4", "--mode", "sample", "--samples", "10", "--walk-length", "12", "--seed",
                 "7"}),
            0);
  EXPECT_EQ(out_json().at("strong"), 10);
  EXPECT_EQ(out_json().at("walk_length"), 12);
}

TEST_F(CliTest, VerifyTypeAErrors) {
  EXPECT_EQ(run({"verify-type-a", "--n", "7"}), 2);
  EXPECT_EQ(run({"verify-type-a", "--n", "0"}), 2);
  EXPECT_EQ(run({"verify-type-a", "--n", "3", "--mode", "random"}), 2);
  EXPECT_EQ(run({"verify-type-a"}), 2);
}

TEST_F(CliTest, HelpExitsCleanly) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out_.str().find("verify-type-a"), std::string::npos);
}
