#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace unorm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "unorm_cli_test";
  fs::create_directories(d);
  return d / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, NoSubcommandIsUsageError) {
  const Result r = call({});
  EXPECT_EQ(r.code, cli::usage);
  EXPECT_NE(r.err.find("algebra"), std::string::npos);
}

TEST(Cli, UnknownOptionIsUsageError) {
  EXPECT_EQ(call({"algebra", "list", "--bogus"}).code, cli::usage);
  EXPECT_EQ(call({"algebra", "list", "--format", "xml"}).code, cli::usage);
  EXPECT_EQ(call({"unorm", "eval", "--algebra", "C"}).code, cli::usage);  // --point missing
}

TEST(Cli, HelpSucceeds) { EXPECT_EQ(call({"--help"}).code, cli::ok); }

TEST(Cli, AlgebraListCsv) {
  const Result r = call({"algebra", "list"});
  ASSERT_EQ(r.code, cli::ok);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "name,dim,inverse_rule,associative,one_norm_sq");
  EXPECT_NE(r.out.find("\nH,4,"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 37);
}

TEST(Cli, EvalMatchesClosedForm) {
  const Result r = call({"unorm", "eval", "--algebra", "C", "--params", "1", "--point", "1,1", "--format", "json"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  const auto j = io::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_NEAR(j["rows"][0]["closed_form"].get<double>(), 3.1017664, 1e-7);
}

TEST(Cli, EvalOutOfDomainFails) {
  const Result r = call({"unorm", "eval", "--algebra", "C", "--params", "0", "--point", "-1,0"});
  EXPECT_EQ(r.code, cli::usage);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, UnknownAlgebraFails) { EXPECT_EQ(call({"protonorm", "solve", "--algebra", "octonions"}).code, cli::usage); }

TEST(Cli, ProtonormSolveFromJsonFile) {
  const fs::path p = scratch("dual.json");
  const Result shown = call({"algebra", "show", "--algebra", "dual", "--format", "json"});
  ASSERT_EQ(shown.code, cli::ok);
  write(p, shown.out);
  const AlgebraDef back = io::resolve_algebra(p.string());
  EXPECT_EQ(back.sc, lookup("dual").sc);
  const Result r = call({"protonorm", "solve", "--algebra", p.string(), "--format", "json"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  EXPECT_NE(r.out.find("\"dimension\": 2"), std::string::npos) << r.out;
}

TEST(Cli, MalformedAlgebraFile) {
  const fs::path p = scratch("bad.json");
  write(p, R"({"dim": 2, "structure_constants": [1, 0], "unity": [1, 0]})");
  EXPECT_EQ(call({"protonorm", "solve", "--algebra", p.string()}).code, cli::usage);
}

TEST(Cli, FunctorWithIdealFile) {
  const fs::path p = scratch("ideal.json");
  write(p, "[[0, 1]]");
  const Result r = call({"functor", "check", "--algebra", "R+R", "--target", "R", "--ideal", p.string()});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  EXPECT_NE(r.out.find(",morphism,"), std::string::npos) << r.out;
  const Result x = call({"functor", "check", "--algebra", "C", "--target", "R"});
  EXPECT_NE(x.out.find(",excluded,"), std::string::npos) << x.out;
}

TEST(Cli, FunctorSuite) { EXPECT_EQ(call({"functor", "check"}).code, cli::ok); }

TEST(Cli, RegRunMethods) {
  for (const char* m : {"tikhonov", "tsvd", "geomfp"}) {
    SCOPED_TRACE(m);
    const Result r = call({"reg", "run", "--method", m, "--size", "40", "--delta", "1e-3"});
    ASSERT_EQ(r.code, cli::ok) << r.err;
    EXPECT_EQ(r.out.rfind("method,delta", 0), 0u);
  }
}

TEST(Cli, RegRunProblemFile) {
  const fs::path p = scratch("problem.json");
  write(p, R"({"F": [[2, 0], [0, 1]], "y": [4, 3], "delta": 0.5, "epsilon": 1})");
  const Result r = call({"reg", "run", "--problem", p.string(), "--method", "tsvd", "--k", "1", "--format", "json"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  const auto j = io::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["rows"][0]["discrepancy"].get<double>(), 3.0);
  EXPECT_EQ(call({"reg", "run", "--problem", scratch("missing.json").string()}).code, cli::usage);
}

TEST(Cli, ConvergeRejectsAscendingDeltas) {
  EXPECT_EQ(call({"reg", "converge", "--size", "20", "--deltas", "1e-3,1e-2"}).code, cli::usage);
}

TEST(Cli, AntiwedgeSpeedChecked) {
  EXPECT_EQ(call({"antiwedge", "verify", "--trials", "10"}).code, cli::ok);
  EXPECT_EQ(call({"antiwedge", "verify", "--v", "1.2"}).code, cli::usage);
}

TEST(Cli, OutFileMatchesStdout) {
  const fs::path p = scratch("toeplitz.csv");
  const Result a = call({"toeplitz", "verify", "--trials", "5", "--seed", "3"});
  const Result b = call({"toeplitz", "verify", "--trials", "5", "--seed", "3", "--out", p.string()});
  ASSERT_EQ(a.code, cli::ok);
  ASSERT_EQ(b.code, cli::ok);
  EXPECT_TRUE(b.out.empty());
  std::ifstream f(p);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, a.out);
}

TEST(Cli, SeedDeterminism) {
  const std::vector<std::string> args{"unorm", "verify-table1", "--rows", "C,dual,uT3", "--trials", "5", "--seed", "9"};
  EXPECT_EQ(call(args).out, call(args).out);
  auto other = args;
  other.back() = "10";
  EXPECT_NE(call(args).out, call(other).out);
}

TEST(Cli, ToleranceOverrideCanFail) {
  EXPECT_EQ(call({"unorm", "eval", "--algebra", "C", "--params", "1", "--point", "1,1", "--tol", "0"}).code,
            cli::failed);
}
