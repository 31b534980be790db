#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ens/cli.hpp"
#include "ens/reductions.hpp"
#include "ens/unions.hpp"
#include "fixtures.hpp"
#include "gadget_checks.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ens-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("master.ts", ens::serialize_ts(ens::testing::master()));
    write("abab.ts", ens::serialize_ts(ens::testing::chain({"a", "b", "a", "b"})));
    write("phi6.cnf3", "clause 0 1 2\nclause 0 1 3\nclause 0 2 3\nclause 1 4 5\nclause 2 4 5\nclause 3 4 5\n");
    write("phi4.cnf3", "clause 0 1 2\nclause 0 1 3\nclause 0 2 3\nclause 1 2 3\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  Outcome run(std::vector<std::string> args) const {
    args.insert(args.begin(), "ens");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = ens::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, MasterIsFeasible) {
  auto r = run({"check-feasible", path("master.ts")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("holds\n", 0), 0u);
  EXPECT_NE(r.out.find("region: {m0, m3, m7}"), std::string::npos);
}

TEST_F(Cli, AbabFailsTheLinearCheck) {
  auto r = run({"linear2-ssp", path("abab.ts")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "fails\nnon-separable: (s0, s4)\n");
  auto ssp = run({"check-ssp", path("abab.ts")});
  EXPECT_EQ(ssp.code, 1);
  EXPECT_NE(ssp.out.find("counterexample: (s0, s4)"), std::string::npos);
}

TEST_F(Cli, Models) {
  auto r = run({"models", path("phi6.cnf3")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("{X0,X4}\n"), std::string::npos);
  auto none = run({"models", path("phi4.cnf3")});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.out, "no model\n");
}

TEST_F(Cli, ClassifyAndValidate) {
  EXPECT_EQ(run({"classify", path("master.ts")}).out, "k=3 g=1 linear\n");
  write("loop.ts", ".ts\ninitial s0\nedge s0 a s0\n");
  auto r = run({"validate", path("loop.ts")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("loop-free: (s0 a s0)"), std::string::npos);
  EXPECT_EQ(run({"validate", path("master.ts")}).out, "valid\n");
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run({"check-ssp", path("missing.ts")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check-ssp", "--bogus", path("master.ts")}).code, 2);
  EXPECT_EQ(run({"--timeout", "0", "check-ssp", path("master.ts")}).code, 2);
  write("bad.ts", ".ts\nedge s0\n");
  auto r = run({"check-ssp", path("bad.ts")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"models", path("master.ts")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, TimeoutReportsProgress) {
  ASSERT_EQ(run({"reduce", "--construction", "linear3-essp", "--in", path("phi6.cnf3"), "--out", path("r")}).code, 0);
  auto r = run({"--timeout", "0.000001", "check-essp", path("r/instance.ts")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out.rfind("timeout after ", 0), 0u);
}

TEST_F(Cli, ReduceWritesAllArtifacts) {
  auto r = run({"reduce", "--construction", "linear3-essp", "--in", path("phi4.cnf3"), "--out", path("r")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read("r/instance.key"), "construction linear3-essp\nquery k m6\n");
  const auto file = ens::parse_union(read("r/instance.union"));
  const auto inst = ens::build_linear3_essp(ens::testing::phi4());
  EXPECT_EQ(file.components, inst.components);
  EXPECT_EQ(read("r/instance.ts"), ens::serialize_ts(inst.joined()));
  EXPECT_EQ(run({"classify", path("r/instance.union")}).out, "k=3 g=1 linear\n");
  auto again = run({"reduce", "--construction", "linear3-essp", "--in", path("phi4.cnf3"), "--out", path("r2")});
  EXPECT_EQ(read("r/instance.union"), read("r2/instance.union"));
  EXPECT_EQ(again.out, r.out);

  write("one.cnf3", "clause 0 1 2\n");
  EXPECT_EQ(run({"reduce", "--construction", "linear3-essp", "--in", path("one.cnf3"), "--out", path("r3")}).code, 2);
  EXPECT_EQ(run({"reduce", "--construction", "linear3-essp", "--unchecked", "--in", path("one.cnf3"), "--out",
                 path("r3")})
                .code,
            0);
  EXPECT_EQ(run({"reduce", "--construction", "linear3-ssp", "--in", path("abab.ts"), "--out", path("r4")}).code, 0);
  EXPECT_NE(read("r4/instance.key").find("pair a:s1:m0 a:s1:m1\n"), std::string::npos);
  EXPECT_EQ(run({"reduce", "--construction", "2grade2-ssp", "--in", path("master.ts"), "--out", path("r5")}).code, 0);
  EXPECT_EQ(run({"reduce", "--construction", "sat", "--in", path("master.ts"), "--out", path("r6")}).code, 2);
}

TEST_F(Cli, NegativeInstanceFailsAtTheKeyQuery) {
  ASSERT_EQ(run({"reduce", "--construction", "linear3-essp", "--in", path("phi4.cnf3"), "--out", path("r")}).code, 0);
  auto r = run({"--format", "json", "check-essp", "--exhaustive", path("r/instance.ts")});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["counterexamples"].size(), 1u);
  EXPECT_EQ(j["counterexamples"][0]["event"], "k");
  EXPECT_EQ(j["counterexamples"][0]["state"], "m6");
  EXPECT_EQ(j["exit_code"], 1);
}

TEST_F(Cli, SynthesisRoundTrip) {
  auto r = run({"synthesize", path("master.ts"), "--out", path("m.ens")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("reachability graph isomorphic"), std::string::npos);
  auto rg = run({"reach-graph", path("m.ens"), "--against", path("master.ts")});
  EXPECT_EQ(rg.code, 0);
  EXPECT_NE(rg.out.find("\nisomorphic\n"), std::string::npos);
  auto all = run({"synthesize", "--all-regions", path("master.ts")});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(all.out.rfind(".ens", 0), 0u);
  EXPECT_EQ(run({"synthesize", path("abab.ts")}).code, 1);
}

TEST_F(Cli, Separator) {
  auto r = run({"separator", path("abab.ts"), "0", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("exit: a\nenter: b\n", 0), 0u);
  EXPECT_EQ(run({"separator", path("abab.ts"), "0", "4"}).code, 1);
  EXPECT_EQ(run({"separator", path("abab.ts"), "3", "1"}).code, 2);
  EXPECT_EQ(run({"separator", path("master.ts"), "0", "1"}).code, 2);
}

TEST_F(Cli, ExportDot) {
  auto r = run({"export-dot", path("master.ts"), "--highlight", "m0,m3,m7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_EQ(run({"export-dot", path("master.ts"), "--highlight", "nope"}).code, 2);
  run({"synthesize", path("master.ts"), "--out", path("m.ens")});
  EXPECT_NE(run({"export-dot", path("m.ens")}).out.find("shape=box"), std::string::npos);
}

TEST_F(Cli, CorpusIsSeeded) {
  ASSERT_EQ(run({"corpus", "--kind", "random", "--count", "3", "--seed", "7", "--out", path("a")}).code, 0);
  ASSERT_EQ(run({"corpus", "--kind", "random", "--count", "3", "--seed", "7", "--out", path("b")}).code, 0);
  EXPECT_EQ(read("a/0002.ts"), read("b/0002.ts"));
  auto chains = run({"corpus", "--kind", "chains", "--states", "3", "--alphabet", "2", "--out", path("c")});
  EXPECT_EQ(chains.out.rfind("0000.ts\n", 0), 0u);
}

TEST_F(Cli, JsonMirrorsText) {
  auto r = run({"--format", "json", "classify", path("master.ts")});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["k"], 3);
  EXPECT_EQ(j["g"], 1);
  EXPECT_EQ(j["linear"], true);
  auto a = run({"--format", "json", "check-feasible", path("master.ts")});
  auto b = run({"--format", "json", "check-feasible", path("master.ts")});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["holds"], true);
}
