#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

/// Runs the CLI with `args` (shell syntax), capturing stdout; stderr is dropped.
RunResult run(const std::string &args) {
  const std::string cmd = std::string(PA_MINCSP_BIN) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string first_line(const std::string &s) { return s.substr(0, s.find('\n')); }

std::size_t count_prefix(const std::string &s, const std::string &prefix) {
  std::size_t count = 0, pos = 0;
  while (pos < s.size()) {
    const std::size_t end = s.find('\n', pos);
    if (s.compare(pos, prefix.size(), prefix) == 0)
      ++count;
    if (end == std::string::npos)
      break;
    pos = end + 1;
  }
  return count;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pa_mincsp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string &name, const std::string &content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  fs::path dir_;
};

} // namespace

TEST_F(Cli, SolveReportsOptimumAndWitness) {
  auto f = write("cycle.txt", "k 1\nlt x y soft 2\nlt y x soft 1\n");
  auto r = run("solve " + f);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "YES cost=1 weight=1");
  EXPECT_NE(r.out.find("delete 1\n"), std::string::npos);
  EXPECT_EQ(count_prefix(r.out, "assign "), 2u);
  EXPECT_EQ(count_prefix(r.out, "value "), 0u);

  r = run("solve --rational --engine oracle " + f);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "YES cost=1 weight=1");
  EXPECT_EQ(count_prefix(r.out, "value "), 2u);
}

TEST_F(Cli, SolveNoAndCrispUnsat) {
  auto r = run("solve " + write("no.txt", "k 0\nlt x y soft\nlt y x soft\n"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(first_line(r.out), "NO");
  r = run("solve " + write("crisp.txt", "k 4\nlt x y crisp\nlt y x crisp\n"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(first_line(r.out), "UNSAT-CRISP");
}

TEST_F(Cli, UsageAndFormatErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("solve " + (dir_ / "missing.txt").string()).code, 2);
  EXPECT_EQ(run("solve " + write("bad.txt", "k 1\ngt x y soft\n")).code, 2);
  auto ok = write("ok.txt", "k 1\nlt x y soft\n");
  EXPECT_EQ(run("solve --engine quantum " + ok).code, 2);
  EXPECT_EQ(run("solve --engine pipeline " + write("leq.txt", "k 1\nleq x y soft\n")).code, 2);
  EXPECT_EQ(run("bench no-such-suite").code, 2);
  EXPECT_EQ(run("reduce --to nowhere " + ok).code, 2);
}

TEST_F(Cli, OracleGuardExitsThree) {
  std::string text = "k 1\n";
  for (int v = 0; v < 10; ++v)
    text += "lt v" + std::to_string(v) + " v" + std::to_string(v + 1) + " soft\n";
  EXPECT_EQ(run("oracle " + write("big.txt", text)).code, 3);
}

TEST_F(Cli, SatAndClassify) {
  auto r = run("sat " + write("sat.txt", "k 0\nlt a b soft\nneq b c soft\n"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "SAT");
  EXPECT_EQ(count_prefix(r.out, "assign "), 3u);
  r = run("sat " + write("unsat.txt", "k 0\nleq a b soft\nlt b a soft\n"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(first_line(r.out), "UNSAT");
  EXPECT_EQ(first_line(run("classify --relations leq,neq").out).rfind("w1-hard", 0), 0u);
  EXPECT_EQ(first_line(run("classify --relations lt,eq,neq").out).rfind("fpt", 0), 0u);
  EXPECT_EQ(first_line(run("classify --relations eq,leq").out).rfind("polytime", 0), 0u);
}

TEST_F(Cli, ReduceAndOracleAgree) {
  auto f = write("lt.txt", "k 2\nlt a b soft\nlt b c soft 3\nlt c a soft\n");
  auto reduced = run("reduce --to dfas " + f);
  EXPECT_EQ(reduced.code, 0);
  EXPECT_EQ(first_line(reduced.out), "problem dfas");
  auto graph = run("oracle " + write("g.txt", reduced.out));
  auto direct = run("oracle " + f);
  EXPECT_EQ(graph.code, 0);
  EXPECT_EQ(first_line(graph.out), first_line(direct.out));
  EXPECT_EQ(first_line(direct.out), "YES cost=1 weight=1");
}

TEST_F(Cli, BooleanizeLayout) {
  auto f = write("b.txt", "k 1\nlt x y soft\neq y z soft\n");
  auto r = run("booleanize " + f + " --anchors x,z");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_prefix(r.out, "bvar "), 21u); // 3 variables, (3*2+1) each
  EXPECT_EQ(count_prefix(r.out, "bcons soft "), 2u);
  EXPECT_EQ(run("booleanize " + f + " --anchors x,nope").code, 2);
  EXPECT_EQ(run("booleanize " + f + " --anchors x,x").code, 2);
}

TEST_F(Cli, GadgetBuildAndVerify) {
  auto f = write("clique.txt", "k 2\npart 1 a\npart 2 b\nedge a b\n");
  auto out = (dir_ / "d.txt").string();
  EXPECT_EQ(run("gadget build " + f + " -o " + out).code, 0);
  ASSERT_TRUE(fs::exists(out));
  ASSERT_TRUE(fs::exists(out + ".map"));
  std::ifstream map_in(out + ".map");
  std::string header;
  std::getline(map_in, header);
  EXPECT_EQ(header, "gadget k 2 n 1 budget 12");
  auto v = run("gadget verify " + f);
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("agree"), std::string::npos);

  auto none = write("none.txt", "k 2\npart 1 a\npart 2 b\n");
  v = run("gadget verify " + none);
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("cut none"), std::string::npos);
}

TEST_F(Cli, GenIsSeeded) {
  auto a = run("gen --seed 5 --vars 4 --constraints 6");
  auto b = run("gen --seed 5 --vars 4 --constraints 6");
  auto c = run("gen --seed 6 --vars 4 --constraints 6");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  auto g = run("gen --kind clique --parts 3 --part-size 2 --seed 1");
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(count_prefix(g.out, "part "), 3u);
  EXPECT_NE(run("oracle " + write("g.txt", g.out)).code, 2);
}

TEST_F(Cli, BenchSuitesPass) {
  auto r = run("bench boolean-vs-subsets --count 5 --seed 3 --deterministic");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_prefix(r.out, "PASS "), 5u);
  r = run("bench pipeline-vs-oracle --count 5");
  EXPECT_EQ(r.code, 0);
}
