#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "simtwist/cli.hpp"

using namespace simtwist;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::path(::testing::TempDir()) / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, GenerateAndVerify) {
  const auto path = temp_file("worked.json");
  const auto r = run({"generate", "--curve1", "1,1", "--curve2", "2,2", "--count", "3", "--output", path.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Json j = Json::parse(slurp(path));
  EXPECT_EQ(j.at("certificates").size(), 3u);
  EXPECT_EQ(j.at("certificates")[0].at("D"), "-1");
  EXPECT_TRUE(j.at("ledger_ok").get<bool>());

  const auto v = run({"verify", "--input", path.string()});
  EXPECT_EQ(v.code, cli::kOk);
  EXPECT_NE(v.out.find("certificate 0 (k=1): OK"), std::string::npos);
  EXPECT_NE(v.out.find("square classes: OK (3 pairwise products non-square)"), std::string::npos);
}

TEST(Cli, VerifyRejectsTamperedFile) {
  const auto path = temp_file("tampered.json");
  ASSERT_EQ(run({"generate", "--curve1", "1,1", "--curve2", "2,2", "--count", "2", "--output", path.string()}).code,
            cli::kOk);
  Json j = Json::parse(slurp(path));
  j["certificates"][1]["curves"][0]["witness"]["multiples"][0][1] = "0";
  std::ofstream(path, std::ios::binary) << j.dump();
  const auto v = run({"verify", "--input", path.string()});
  EXPECT_EQ(v.code, cli::kError);
  EXPECT_NE(v.out.find("FAIL witness-recompute-mismatch"), std::string::npos);

  // an untouched certificate on its own
  Json single = Json::parse(slurp(path))["certificates"][0];
  std::ofstream(path, std::ios::binary) << single.dump();
  EXPECT_EQ(run({"verify", "--input", path.string()}).code, cli::kOk);
}

TEST(Cli, VerifyChecksLedgerClaim) {
  const auto path = temp_file("dup.json");
  ASSERT_EQ(run({"generate", "--curve1", "1,1", "--curve2", "2,2", "--count", "2", "--output", path.string()}).code,
            cli::kOk);
  Json j = Json::parse(slurp(path));
  j["certificates"][1] = j["certificates"][0];
  std::ofstream(path, std::ios::binary) << j.dump();
  const auto v = run({"verify", "--input", path.string()});
  EXPECT_EQ(v.code, cli::kError);
  EXPECT_NE(v.out.find("square classes: FAIL class-collision"), std::string::npos);
  EXPECT_NE(v.out.find("ledger flag: FAIL"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"jzero", "--curve1", "0,1", "--curve2", "0,2", "--count", "3"};
  const auto first = run(args);
  const auto second = run(args);
  ASSERT_EQ(first.code, cli::kOk) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(Json::parse(first.out).at("jzero").at("p"), "5");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kError);
  EXPECT_EQ(run({"generate", "--curve1", "1,1"}).code, cli::kError);
  EXPECT_EQ(run({"generate", "--curve1", "-3,2", "--curve2", "1,1"}).code, cli::kError);
  EXPECT_EQ(run({"generate", "--curve1", "1/0,1", "--curve2", "1,1"}).code, cli::kError);
  EXPECT_EQ(run({"corollary", "--curve", "0,1", "--delta", "2"}).code, cli::kError);
  EXPECT_EQ(run({"jzero", "--curve1", "1,1", "--curve2", "0,2"}).code, cli::kError);
  EXPECT_EQ(run({"jzero", "--curve1", "0,1", "--curve2", "0,64"}).code, cli::kError);
  EXPECT_EQ(run({"verify", "--input", temp_file("missing.json").string()}).code, cli::kError);
  EXPECT_EQ(run({"generate", "--curve1", "1,1", "--curve2", "2,2", "--count", "0"}).code, cli::kError);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  // budget too small for the request: partial result
  const auto partial = run({"generate", "--curve1", "1,1", "--curve2", "2,2", "--count", "5", "--max-iterations", "2"});
  EXPECT_EQ(partial.code, cli::kPartial);
  EXPECT_FALSE(Json::parse(partial.out).at("report").at("complete").get<bool>());
  // lambda search exhausted
  EXPECT_EQ(run({"generate", "--curve1", "1,1", "--curve2", "1,2", "--lambda-bound", "1"}).code, cli::kPartial);
}

TEST(Cli, OtherModes) {
  const auto cor = run({"corollary", "--curve", "1,1", "--delta", "2", "--count", "2"});
  ASSERT_EQ(cor.code, cli::kOk) << cor.err;
  const Json cj = Json::parse(cor.out);
  EXPECT_EQ(cj.at("delta"), "2");
  EXPECT_EQ(cj.at("pair").at("curve2").at("a"), "4");
  EXPECT_EQ(cj.at("pair").at("curve2").at("b"), "8");

  const auto el = run({"elementary", "--curve", "1,1", "--count", "3"});
  ASSERT_EQ(el.code, cli::kOk);
  const Json ej = Json::parse(el.out);
  EXPECT_EQ(ej.at("certificates")[2].at("D"), "31");

  const auto id = run({"identity-check"});
  EXPECT_EQ(id.code, cli::kOk);
  EXPECT_EQ(id.out.find("FAILS"), std::string::npos);
  EXPECT_EQ(std::count(id.out.begin(), id.out.end(), '\n'), 4);
}
