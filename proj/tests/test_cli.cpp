#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyclo/cli.hpp"

using namespace cyclo;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run_cli(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

}  // namespace

TEST(Cli, ParsesIntegerListsAndGenerators) {
  EXPECT_EQ(cli::parse_integer_list("1,-2, 3"), (std::vector<Integer>{1, -2, 3}));
  EXPECT_THROW(cli::parse_integer_list("1,x"), InvalidParameter);
  EXPECT_THROW(cli::parse_integer_list(""), InvalidParameter);
}

TEST(Cli, ExampleCodeSearch) {
  const Json j = run_json({"codes", "--m", "3", "--gen", "1,9", "--t", "1"});
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["graph"]["n_vertices"], 91);
  EXPECT_EQ(j["perfect_count"], 1);
  EXPECT_EQ(j["agreement"], true);
  int perfect = 0;
  for (const auto& c : j["candidates"])
    if (c["is_perfect"] == true) {
      ++perfect;
      EXPECT_EQ(c["norm"], 7);
      EXPECT_EQ(c["code_size"], 13);
    }
  EXPECT_EQ(perfect, 1);

  const Json none = run_json({"codes", "--m", "3", "--gen", "1,9", "--t", "2"});
  EXPECT_EQ(none["perfect_count"], 0);
}

TEST(Cli, PowerBasisInputForM3) {
  // Power basis (1, -9) is 1 + 9 rho.
  const Json j = run_json({"codes", "--m", "3", "--gen", "1,-9", "--basis", "power", "--t", "1"});
  EXPECT_EQ(j["perfect_count"], 1);
  EXPECT_EQ(j["graph"]["norm"], 91);
}

TEST(Cli, JsonOutputIsDeterministic) {
  const std::vector<std::string> args{"graph", "--m", "4", "--gen", "7,4", "--format", "json"};
  const auto a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["n_vertices"], 65);
  EXPECT_EQ(j["valency"], 4);
  EXPECT_EQ(j["rotational"], true);
  EXPECT_EQ(j["edges"].size(), 130u);

  const std::vector<std::string> fargs{"frobenius", "--p", "3", "--n-range", "7:60", "--format", "json", "-j", "4"};
  EXPECT_EQ(run_cli(fargs).out, run_cli({"frobenius", "--p", "3", "--n-range", "7:60", "--format", "json"}).out);
}

TEST(Cli, CirculantGraph) {
  const Json j = run_json({"graph", "--kind", "circulant", "-n", "10", "-S", "1,9"});
  EXPECT_EQ(j["diameter"], 5);
  EXPECT_EQ(j["shells"], Json({1, 2, 2, 2, 2, 1}));
  EXPECT_EQ(j["rotational"], nullptr);
  const auto dot = run_cli({"graph", "--kind", "circulant", "-n", "5", "-S", "1,4", "--format", "dot"});
  EXPECT_EQ(dot.code, 0);
  EXPECT_NE(dot.out.find("0 -- 1;"), std::string::npos);
}

TEST(Cli, FrobeniusCommand) {
  const Json empty = run_json({"frobenius", "--p", "3", "--n", "9"});
  ASSERT_EQ(empty["results"].size(), 1u);
  EXPECT_TRUE(empty["results"][0]["candidates"].empty());

  const Json range = run_json({"frobenius", "--p", "5", "--n-range", "11:200"});
  bool has_11 = false;
  for (const auto& r : range["results"])
    if (r["n"] == 11 && !r["candidates"].empty()) {
      has_11 = true;
      for (const auto& c : r["candidates"]) EXPECT_EQ(c["bridged"], true);
    }
  EXPECT_TRUE(has_11);

  const Json nb = run_json({"frobenius", "--p", "5", "--n", "11", "--no-bridge"});
  EXPECT_EQ(nb["results"][0]["candidates"][0]["bridged"], false);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"graph", "--m", "4", "--gen", "0,0"}).code, 2);
  EXPECT_EQ(run_cli({"graph", "--m", "4", "--gen", "7,4", "--max-vertices", "10"}).code, 3);
  EXPECT_EQ(run_cli({"codes", "--m", "3", "--gen", "1,9"}).code, 2);  // missing --t
  EXPECT_EQ(run_cli({"frobenius", "--p", "4", "--n", "13"}).code, 2);
  EXPECT_EQ(run_cli({"frobenius", "--p", "3"}).code, 2);
  EXPECT_EQ(run_cli({"nonsense"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, EnvironmentBounds) {
  ::setenv("CYCLO_MAX_VERTICES", "20", 1);
  EXPECT_EQ(run_cli({"graph", "--m", "4", "--gen", "7,4"}).code, 3);
  ::setenv("CYCLO_MAX_VERTICES", "abc", 1);
  EXPECT_EQ(run_cli({"graph", "--m", "4", "--gen", "7,4"}).code, 2);
  ::unsetenv("CYCLO_MAX_VERTICES");
  EXPECT_EQ(run_cli({"graph", "--m", "4", "--gen", "7,4"}).code, 0);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "cyclo_cli_test.json";
  std::filesystem::remove(path);
  const auto r = run_cli({"graph", "--m", "4", "--gen", "3,2", "--format", "json", "-o", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(Json::parse(in)["n_vertices"], 13);
  std::filesystem::remove(path);
}

TEST(Cli, AcceptanceFaultInjectionFails) {
  const auto r = run_cli({"accept", "--inject-fault", "--format", "json"});
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["all_pass"], false);
  for (const auto& c : j["criteria"])
    if (c["id"] == 7) {
      EXPECT_EQ(c["pass"], false);
    }
}
