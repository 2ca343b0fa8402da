#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpl/cli.hpp"

namespace dpl {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out, err;
};

Invocation dpl(std::vector<std::string> args) {
  args.insert(args.begin(), "dpl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dpl_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, ProveGlobalValid) {
  Invocation r = dpl({"-q", "prove", "--global", "([a]p && <a>q) -> <a>(p && q)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "VALID\n");
  EXPECT_EQ(r.err, "");
}

TEST_F(Cli, ProveGlobalInvalidWritesDot) {
  Invocation r = dpl({"-q", "prove", "--global", "--dot", path("cm.dot"), "--json", path("cm.json"), "<a>p -> [a]p"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "INVALID\n");
  DotGraph g = parse_dot(slurp(path("cm.dot")));
  EXPECT_EQ(g.nodes.size(), 3u);
  EXPECT_EQ(g.edges.size(), 2u);
  VStructure from_dot = structure_from_dot(g);
  EXPECT_EQ(structure_from_json(nlohmann::json::parse(slurp(path("cm.json")))), from_dot);
  EXPECT_EQ(structure_from_json(to_json(from_dot)), from_dot);
  EXPECT_FALSE(satisfies(from_dot, 0, parse_formula("<a>p -> [a]p")));
}

TEST_F(Cli, Atoms) {
  Invocation r = dpl({"-q", "atoms", "--vocab", "a,b", "a"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a & !b\na & b\n");
  Invocation eq = dpl({"-q", "atoms", "--eq", "a & b = 0", "a"});
  EXPECT_EQ(eq.out, "a & !b\n");
  EXPECT_EQ(dpl({"-q", "atoms", "--vocab", "a", "b"}).code, 2);
  EXPECT_EQ(dpl({"-q", "atoms", "--eq", "p", "a"}).code, 2);
}

TEST_F(Cli, SatAndLocalVocabulary) {
  EXPECT_EQ(dpl({"-q", "sat", "--vocab", "a", "<a>p && <a>~p"}).code, 1);
  Invocation s = dpl({"-q", "sat", "--vocab", "a,b", "<a>p && <a>~p"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out, "SAT\n");
  EXPECT_EQ(dpl({"-q", "prove", "--vocab", "a,b", "[a + b]p <-> [U]p"}).code, 0);
  EXPECT_EQ(dpl({"-q", "prove", "--vocab", "a,b,c", "[a + b]p <-> [U]p"}).code, 1);
  EXPECT_EQ(dpl({"-q", "prove", "[a + b]p <-> [U]p"}).out, "VALID\n");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(dpl({"-q", "prove", "--global", "--vocab", "a", "p"}).code, 2);
  EXPECT_EQ(dpl({"-q", "prove", "--max-fresh", "1", "p"}).code, 2);
  EXPECT_EQ(dpl({"-q", "prove"}).code, 2);
  EXPECT_EQ(dpl({"-q"}).code, 2);
  EXPECT_EQ(dpl({"-q", "frobnicate"}).code, 2);
  EXPECT_EQ(dpl({"-q", "prove", "--jobs", "0", "p"}).code, 2);
  Invocation vocab = dpl({"-q", "prove", "--vocab", "a", "[b]p"});
  EXPECT_EQ(vocab.code, 2);
  EXPECT_NE(vocab.err.find("error"), std::string::npos);
}

TEST_F(Cli, ParseErrorShowsPosition) {
  Invocation r = dpl({"-q", "prove", "p && (q ||"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
  EXPECT_NE(r.err.find("\n  " + std::string(10, ' ') + "^\n"), std::string::npos) << r.err;
  for (const char* bad : {"", "((", "[a", "a = ", "\x01", "P(", "~"}) EXPECT_EQ(dpl({"-q", "prove", bad}).code, 2) << bad;
}

TEST_F(Cli, ResourceLimit) {
  Invocation r = dpl({"-q", "prove", "--global", "--max-fresh", "1", "<a>p -> [a]p"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(dpl({"-q", "prove", "--global", "--max-fresh", "2", "<a>p -> [a]p"}).code, 1);
}

TEST_F(Cli, BannerAndHelp) {
  Invocation r = dpl({"prove", "p -> p"});
  EXPECT_EQ(r.err, std::string("dpl ") + kVersion + "\n");
  Invocation h = dpl({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("prove"), std::string::npos);
  EXPECT_NE(h.out.find("atoms"), std::string::npos);
}

TEST_F(Cli, Deterministic) {
  std::vector<std::string> args{"-q", "-v", "prove", "--global", "--trace", "-", "Pw(a + b) <-> (Pw(a) || Pw(b))"};
  Invocation a = dpl(args), b = dpl(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("vocabulary: a, b, _b1"), std::string::npos);
  EXPECT_NE(a.out.find("CLOSE"), std::string::npos);
}

TEST_F(Cli, TraceFile) {
  Invocation r = dpl({"-q", "prove", "--global", "--trace", path("t.json"), "([a]p && <a>q) -> <a>(p && q)"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(slurp(path("t.json")));
  EXPECT_EQ(j.at("verdict"), "VALID");
  EXPECT_FALSE(j.at("steps").empty());
}

TEST_F(Cli, Batch) {
  const std::string file = std::string(DPL_EXAMPLES_DIR) + "/batch.txt";
  Invocation seq = dpl({"-q", "prove", "--global", "-f", file});
  EXPECT_EQ(seq.code, 1);
  EXPECT_EQ(seq.out,
            "VALID  ([a]p && <a>q) -> <a>(p && q)\n"
            "INVALID  <a>p -> [a]p\n"
            "VALID  P(a + b) -> P(a)\n"
            "VALID  Pw(a + b) <-> (Pw(a) || Pw(b))\n"
            "VALID  p -> p\n");
  Invocation par = dpl({"-q", "prove", "--global", "--jobs", "4", "-f", file});
  EXPECT_EQ(par.out, seq.out);
  EXPECT_EQ(par.code, seq.code);
  EXPECT_EQ(dpl({"-q", "prove", "-f", file, "p"}).code, 2);
  EXPECT_EQ(dpl({"-q", "prove", "-f", file, "--dot", path("x.dot")}).code, 2);
  EXPECT_EQ(dpl({"-q", "prove", "-f", path("missing.txt")}).code, 2);
}

TEST_F(Cli, BatchReportsBadLines) {
  std::ofstream(path("mixed.txt")) << "p -> p\n(\n";
  Invocation r = dpl({"-q", "prove", "-f", path("mixed.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "VALID  p -> p\n");
  EXPECT_NE(r.err.find("mixed.txt:2:"), std::string::npos);
}

}  // namespace
}  // namespace dpl
