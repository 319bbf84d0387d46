#include <gtest/gtest.h>

#include <spgcd/commands.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace th;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run tool(std::vector<std::string> args) {
  args.insert(args.begin(), "spgcd");
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("spgcd_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string without_wall_ms(const std::string& row) {
  std::vector<std::string> parts;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) parts.push_back(c);
  if (parts.size() == 8) parts[5] = "*";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

}  // namespace

TEST(PolyFile, ParsesCommentsAndUnsortedTerms) {
  auto pf = parse_polyfile("# header comment\np 11\nn 2\n  # inline comment line\n1 1 0\n\n1 0 1\n");
  EXPECT_EQ(pf.field.characteristic(), 11u);
  EXPECT_EQ(pf.poly.nvars, 2);
  EXPECT_EQ(render_polyfile(pf.field, pf.poly), "p 11\nn 2\n1 0 1\n1 1 0\n");
}

TEST(PolyFile, RejectsMalformedInput) {
  EXPECT_THROW(parse_polyfile("p 12\nn 1\n1 0\n"), invalid_input);    // composite
  EXPECT_THROW(parse_polyfile("p 11\nn 1\n0 3\n"), parse_error);      // zero coefficient
  EXPECT_THROW(parse_polyfile("p 11\nn 1\n11 3\n"), parse_error);     // coefficient >= p
  EXPECT_THROW(parse_polyfile("p 11\nn 2\n1 3\n"), parse_error);      // arity
  EXPECT_THROW(parse_polyfile("p 11\nn 1\n1 -3\n"), parse_error);     // negative exponent
  EXPECT_THROW(parse_polyfile("p 11\nn 1\n1 3\n2 3\n"), parse_error);  // duplicate
  EXPECT_THROW(parse_polyfile("n 1\np 11\n"), parse_error);
  EXPECT_THROW(parse_polyfile(""), parse_error);
}

TEST(PolyFile, RoundTripOnRandomPolynomials) {
  rng_t rng(71);
  for (u64 p : {2ull, 3ull, 10000019ull}) {
    PrimeField f(p);
    for (int i = 0; i < 40; ++i) {
      const int n = 1 + i % 5;
      const std::size_t terms = i % 7 == 0 ? 1 : 1 + rng() % 12;
      auto a = random_poly(f, n, terms, 9, rng);
      auto text = render_polyfile(f, a);
      auto back = parse_polyfile(text);
      EXPECT_EQ(back.field.characteristic(), p);
      EXPECT_TRUE(sparse::equal(f, back.poly, a));
      EXPECT_EQ(render_polyfile(back.field, back.poly), text);
    }
  }
  PrimeField f(5);
  auto zero = parse_polyfile("p 5\nn 3\n");
  EXPECT_TRUE(zero.poly.empty());
  EXPECT_EQ(render_polyfile(f, zero.poly), "p 5\nn 3\n");
}

TEST(CliGcd, SharedLinearFactorOverF11) {
  TempDir dir;
  PrimeField f(11);
  auto g = poly(f, 2, {{1, {1, 0}}, {1, {0, 1}}});
  auto A = oracle::sparse_mul(f, g, poly(f, 2, {{1, {1, 1}}, {1, {0, 0}}}));
  auto B = oracle::sparse_mul(f, g, poly(f, 2, {{1, {1, 0}}, {2, {0, 0}}}));
  auto a = dir.write("a.poly", render_polyfile(f, A));
  auto b = dir.write("b.poly", render_polyfile(f, B));
  auto r = tool({"gcd", a, b});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "p 11\nn 2\n1 0 1\n1 1 0\n");
  auto r2 = tool({"gcd", a, b, "-o", dir.file("g.poly"), "--term-strategy", "doubling", "--trace"});
  EXPECT_EQ(r2.code, 0);
  EXPECT_EQ(slurp(dir.file("g.poly")), r.out);
  EXPECT_NE(r2.err.find("field degrees"), std::string::npos);
}

TEST(CliGcd, MismatchedPrimesIsUsageError) {
  TempDir dir;
  auto a = dir.write("a.poly", "p 11\nn 1\n1 1\n");
  auto b = dir.write("b.poly", "p 13\nn 1\n1 1\n");
  auto r = tool({"gcd", a, b});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("different primes"), std::string::npos);
}

TEST(CliGcd, CoprimeInputsGiveConstantOne) {
  TempDir dir;
  auto a = dir.write("a.poly", "p 10000019\nn 3\n3 0 0 0\n1 0 1 0\n1 2 0 0\n");
  auto b = dir.write("b.poly", "p 10000019\nn 3\n1 0 0 0\n1 0 0 1\n5 1 0 0\n");
  auto r = tool({"gcd", a, b});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "p 10000019\nn 3\n1 0 0 0\n");
}

TEST(CliGcd, UsageAndParseErrors) {
  TempDir dir;
  auto a = dir.write("a.poly", "p 11\nn 1\n1 1\n");
  auto bad = dir.write("bad.poly", "p 11\nn 1\n1 x\n");
  EXPECT_EQ(tool({"gcd", a}).code, 1);
  EXPECT_EQ(tool({"gcd", a, bad}).code, 1);
  EXPECT_EQ(tool({"gcd", a, dir.file("missing.poly")}).code, 1);
  EXPECT_EQ(tool({"gcd", a, a, "--term-strategy", "sideways"}).code, 1);
  EXPECT_EQ(tool({"frobnicate"}).code, 1);
  EXPECT_EQ(tool({}).code, 1);
}

TEST(CliGcd, NonPrimitiveOmegaIsUsageError) {
  TempDir dir;
  auto a = dir.write("a.poly", "p 11\nn 1\n1 1\n1 0\n");
  auto r = tool({"gcd", a, a, "--omega", "3"});
  EXPECT_EQ(r.code, 1);
}

TEST(CliGcd, FailureWithoutRetriesExitsTwo) {
  // over F_2 without field extension the evaluation points collide
  TempDir dir;
  auto a = dir.write("a.poly", "p 2\nn 2\n1 0 1\n1 0 2\n1 1 0\n1 1 2\n1 1 3\n1 2 1\n1 2 3\n1 3 1\n1 3 2\n1 3 3\n");
  auto b = dir.write("b.poly", "p 2\nn 2\n1 0 3\n1 1 1\n1 1 4\n1 2 0\n1 2 2\n1 2 4\n");
  auto r = tool({"gcd", a, b, "--seed", "0", "--retries", "0", "--epsilon", "0.9", "--extension", "none"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("gcd failed: stage"), std::string::npos);
  auto ok = tool({"gcd", a, b, "--seed", "0"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.out, "p 2\nn 2\n1 0 1\n1 1 0\n1 1 1\n1 1 2\n");
}

TEST(CliGen, ConstantInstance) {
  TempDir dir;
  auto r = tool({"gen", "--n", "1", "--terms", "1", "--deg", "0", "--p", "101", "--seed", "4", "--out-prefix",
                dir.file("c_")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"c_A.poly", "c_B.poly", "c_G.poly"}) {
    auto pf = parse_polyfile(slurp(dir.file(name)));
    ASSERT_EQ(pf.poly.size(), 1u);
    EXPECT_EQ(pf.poly.exp(0)[0], 0);
  }
  EXPECT_EQ(slurp(dir.file("c_G.poly")), "p 101\nn 1\n1 0\n");
}

TEST(CliGen, SixVariableThirtyTermShape) {
  TempDir dir;
  auto r = tool({"gen", "--n", "6", "--terms", "30", "--deg", "30", "--p", "10000019", "--seed", "1", "--out-prefix",
                dir.file("x_")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto A = parse_polyfile(slurp(dir.file("x_A.poly")));
  auto B = parse_polyfile(slurp(dir.file("x_B.poly")));
  auto G = parse_polyfile(slurp(dir.file("x_G.poly")));
  EXPECT_EQ(G.poly.nvars, 6);
  EXPECT_EQ(G.poly.size(), 30u);
  EXPECT_LE(sparse::total_degree(G.poly), 30);
  EXPECT_EQ(G.field.to_u64(sparse::leading_coeff(G.field, G.poly)), 1u);
  EXPECT_TRUE(oracle::divides_exactly(G.field, G.poly, A.poly).has_value());
  EXPECT_TRUE(oracle::divides_exactly(G.field, G.poly, B.poly).has_value());
}

TEST(CliGen, RejectsBadParameters) {
  TempDir dir;
  EXPECT_EQ(tool({"gen", "--terms", "0", "--out-prefix", dir.file("z")}).code, 1);
  EXPECT_EQ(tool({"gen", "--deg", "-1", "--out-prefix", dir.file("z")}).code, 1);
  EXPECT_EQ(tool({"gen", "--n", "1", "--terms", "5", "--deg", "2", "--out-prefix", dir.file("z")}).code, 1);
  EXPECT_EQ(tool({"gen", "--p", "12", "--out-prefix", dir.file("z")}).code, 1);
}

TEST(CliVerify, GeneratedTripleVerifies) {
  TempDir dir;
  ASSERT_EQ(tool({"gen", "--n", "2", "--terms", "3", "--deg", "3", "--p", "101", "--out-prefix", dir.file("v_")}).code,
            0);
  auto r = tool({"verify", dir.file("v_G.poly"), dir.file("v_A.poly"), dir.file("v_B.poly")});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("divisibility: ok"), std::string::npos);
  EXPECT_NE(r.out.find("dense oracle: agrees"), std::string::npos);
}

TEST(CliVerify, NonDivisorExitsThree) {
  TempDir dir;
  auto g = dir.write("g.poly", "p 11\nn 2\n1 1 0\n");
  auto a = dir.write("a.poly", "p 11\nn 2\n1 0 1\n");
  auto r = tool({"verify", g, a, a});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(CliVerify, LargeInstanceIsDivisibilityOnly) {
  TempDir dir;
  ASSERT_EQ(tool({"gen", "--n", "6", "--terms", "10", "--deg", "20", "--out-prefix", dir.file("L_")}).code, 0);
  auto r = tool({"verify", dir.file("L_G.poly"), dir.file("L_A.poly"), dir.file("L_B.poly")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("skipped (outside budget)"), std::string::npos);
}

TEST(CliBench, HeaderAndSeededRowAreStable) {
  auto r = tool({"bench", "--suite", "terms", "--points", "2", "--instances", "1", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "suite,n,terms,degree,seed,wall_ms,retries,success");
  EXPECT_EQ(without_wall_ms(ls[1]), "terms,6,2,30,5,*,0,true");
}

TEST(CliBench, EmptySweepIsHeaderOnly) {
  TempDir dir;
  auto r = tool({"bench", "--suite", "degree", "--points", "", "--csv", dir.file("e.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir.file("e.csv")), "suite,n,terms,degree,seed,wall_ms,retries,success\n");
}

TEST(CliBench, TermsSweepAtDeskScale) {
  TempDir dir;
  auto csv = dir.file("t.csv");
  auto r = tool({"bench", "--suite", "terms", "--points", "2,10,20", "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(slurp(csv));
  ASSERT_EQ(ls.size(), 16u);
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_EQ(ls[i].substr(ls[i].size() - 5), ",true") << ls[i];
  // appending keeps a single header
  ASSERT_EQ(tool({"bench", "--suite", "terms", "--points", "2", "--instances", "1", "--csv", csv}).code, 0);
  ls = lines(slurp(csv));
  EXPECT_EQ(ls.size(), 17u);
  EXPECT_EQ(std::count(ls.begin(), ls.end(), std::string(bench::kCsvHeader)), 1);
}

TEST(CliBench, SmallestDegreePointIsFast) {
  auto r = tool({"bench", "--suite", "degree", "--points", "5", "--instances", "1"});
  ASSERT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  std::vector<std::string> parts;
  std::stringstream ss(ls[1]);
  for (std::string c; std::getline(ss, c, ',');) parts.push_back(c);
  ASSERT_EQ(parts.size(), 8u);
  EXPECT_LT(std::stod(parts[5]), 1000.0);
  EXPECT_EQ(parts[7], "true");
}

TEST(CliBench, RejectsUnknownSuite) {
  EXPECT_EQ(tool({"bench", "--suite", "colours"}).code, 1);
  EXPECT_EQ(tool({"bench", "--suite", "terms", "--points", "2,x"}).code, 1);
}

TEST(CliSeed, EnvironmentFallback) {
  TempDir dir;
  ::setenv("SPGCD_SEED", "17", 1);
  ASSERT_EQ(tool({"gen", "--n", "3", "--terms", "4", "--deg", "5", "--out-prefix", dir.file("e1_")}).code, 0);
  ::unsetenv("SPGCD_SEED");
  ASSERT_EQ(tool({"gen", "--n", "3", "--terms", "4", "--deg", "5", "--seed", "17", "--out-prefix", dir.file("e2_")}).code,
            0);
  ASSERT_EQ(tool({"gen", "--n", "3", "--terms", "4", "--deg", "5", "--seed", "18", "--out-prefix", dir.file("e3_")}).code,
            0);
  EXPECT_EQ(slurp(dir.file("e1_A.poly")), slurp(dir.file("e2_A.poly")));
  EXPECT_NE(slurp(dir.file("e1_A.poly")), slurp(dir.file("e3_A.poly")));
}

TEST(CliPipeline, GenGcdVerifyAtDefaults) {
  TempDir dir;
  int passed = 0;
  const int runs = 200;
  for (int i = 0; i < runs; ++i) {
    const std::string seed = std::to_string(1000 + i);
    const std::string pre = dir.file("r_");
    if (tool({"gen", "--seed", seed, "--out-prefix", pre}).code != 0) continue;
    if (tool({"gcd", pre + "A.poly", pre + "B.poly", "--seed", seed, "-o", pre + "out.poly"}).code != 0) continue;
    if (tool({"verify", pre + "out.poly", pre + "A.poly", pre + "B.poly"}).code != 0) continue;
    passed += slurp(pre + "out.poly") == slurp(pre + "G.poly");
  }
  EXPECT_GE(passed, runs - 1);
}

TEST(CliBinary, ExitCodesFromTheExecutable) {
  TempDir dir;
  auto a = dir.write("a.poly", "p 11\nn 2\n1 0 1\n1 1 0\n");
  auto b = dir.write("b.poly", "p 13\nn 2\n1 0 1\n");
  const std::string exe = SPGCD_TOOL_PATH;
  auto run = [&](const std::string& args) {
    int status = std::system((exe + " " + args + " > " + dir.file("o.txt") + " 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run("gcd " + a + " " + a), 0);
  EXPECT_EQ(slurp(dir.file("o.txt")), "p 11\nn 2\n1 0 1\n1 1 0\n");
  EXPECT_EQ(run("gcd " + a + " " + b), 1);
  EXPECT_EQ(run("verify " + b + " " + a + " " + a), 1);
  auto g = dir.write("g.poly", "p 11\nn 2\n1 1 0\n");
  EXPECT_EQ(run("verify " + g + " " + a + " " + a), 3);
  EXPECT_EQ(run("--help"), 0);
}
