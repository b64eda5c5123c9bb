#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace radonlab::cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "radonlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("radonlab_test_" + name)).string();
}

}  // namespace

TEST(Cli, RegionVerdict) {
  const Outcome r = run_args({"region", "--which", "t2", "--p", "7/4", "--q", "7/3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["member"].get<bool>());
  EXPECT_EQ(j["constraints"].size(), 3u);
  EXPECT_EQ(j["constraints"][1]["text"], "2/q > 1/p");
  EXPECT_FALSE(nlohmann::json::parse(run_args({"region", "--which", "t2", "--p", "3/2", "--q", "3"}).out)["member"]);
}

TEST(Cli, MeanValueRow) {
  const Outcome r = run_args({"mean-value", "--d", "1", "--m", "1", "--n", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "d,m,N,J,norm,wall_ms");
  EXPECT_EQ(r.out.substr(r.out.find('\n') + 1, 8), "1,1,5,5,");
}

TEST(Cli, ImprovingIsReproducible) {
  const std::vector<std::string> args = {"improving", "--poly", "0,0,1", "--p", "8/5", "--dual",
                                         "--n", "8,16,32", "--trials", "50", "--seed", "7"};
  const Outcome a = run_args(args), b = run_args(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
  const Outcome other = run_args({"improving", "--poly", "0,0,1", "--p", "8/5", "--dual", "--n", "8,16,32", "--trials",
                              "50", "--seed", "8"});
  EXPECT_NE(a.out, other.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_args({}).code, 2);
  EXPECT_EQ(run_args({"nonsense"}).code, 2);
  EXPECT_EQ(run_args({"improving", "--poly", "0,0,1", "--p", "8/5", "--dual", "--n", "8", "--trials", "5"}).code, 2);
  EXPECT_EQ(run_args({"transfer", "--quad", "1,-1,0", "--n", "4"}).code, 2);
  EXPECT_EQ(run_args({"transfer", "--quad", "1,0,-2", "--n", "4"}).code, 2);
  EXPECT_EQ(run_args({"transfer", "--quad", "0,1,0", "--n", "4"}).code, 2);
  EXPECT_EQ(run_args({"mean-value", "--d", "9", "--m", "1", "--n", "4"}).code, 2);
  EXPECT_EQ(run_args({"mean-value", "--d", "2", "--m", "1", "--n", "8,4"}).code, 2);
  EXPECT_EQ(run_args({"mean-value", "--d", "2", "--m", "1", "--n", "5000"}).code, 2);
  EXPECT_EQ(run_args({"mean-value", "--d", "2", "--m", "1", "--n", "4", "--which", "t2"}).code, 2);
  EXPECT_EQ(run_args({"region", "--which", "t2", "--p", "1/2", "--q", "2"}).code, 2);
  EXPECT_EQ(run_args({"region", "--which", "conj-i", "--p", "3/2", "--q", "3"}).code, 2);
  EXPECT_EQ(run_args({"sparse", "--poly", "0,0,1", "--p", "2", "--q", "2", "--nmax", "8", "--corpus", "2"}).code, 2);
  EXPECT_EQ(run_args({"mean-value", "--d", "2", "--m", "4", "--n", "64", "--brute-check"}).code, 2);
  EXPECT_EQ(run_args({"mean-value", "--d", "2", "--m", "1", "--n", "4", "--format", "xml"}).code, 2);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const std::string path = temp_path("config.json");
  std::ofstream(path) << R"({"command": "mean-value", "d": 2, "m": 2, "n": [3, 4], "brute_check": true})";
  const Outcome from_file = run_args({"--config", path});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_NE(from_file.out.find("2,2,4,28,"), std::string::npos);
  EXPECT_NE(from_file.out.find("J_brute"), std::string::npos);
  // Flags win over the file.
  const Outcome flags = run_args({"mean-value", "--config", path, "--n", "5", "--format", "json"});
  ASSERT_EQ(flags.code, 0) << flags.err;
  const auto j = nlohmann::json::parse(flags.out);
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_EQ(j["rows"][0]["N"], 5);
  EXPECT_EQ(j["rows"][0]["J"], "45");
  EXPECT_EQ(j["config"]["n"], nlohmann::json::array({5}));
  std::ofstream(path) << R"({"command": "mean-value", "colour": 3})";
  EXPECT_EQ(run_args({"--config", path}).code, 2);
  EXPECT_EQ(run_args({"--config", temp_path("missing.json")}).code, 2);
  std::remove(path.c_str());
}

TEST(Cli, OutputFile) {
  const std::string path = temp_path("out.csv");
  const Outcome r = run_args({"sharpness", "--poly", "0,0,1", "--p", "3/2", "--q", "3", "--n", "4,8", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "N,family,witness,predicted,exact,full_ratio,support");
  std::remove(path.c_str());
}

TEST(Cli, CommandsRunClean) {
  EXPECT_EQ(run_args({"transfer", "--quad", "2,1,3", "--p", "1.6", "--n", "4,8", "--trials", "3", "--seed", "1"}).code, 0);
  EXPECT_EQ(run_args({"lift", "--poly", "0,1/3,1/2,1/6", "--n", "2,3", "--trials", "2", "--seed", "2"}).code, 0);
  EXPECT_EQ(run_args({"fractional", "--poly", "0,0,1", "--lambda", "1/3", "--k", "16", "--q", "2", "--n", "2,8",
                      "--trials", "3", "--seed", "3"})
                .code,
            0);
  const Outcome s = run_args({"sparse", "--poly", "0,1", "--p", "2", "--q", "2", "--nmax", "8", "--corpus", "4", "--seed",
                          "4", "--format", "json"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto j = nlohmann::json::parse(s.out);
  EXPECT_EQ(j["rows"].size(), 4u);
  EXPECT_TRUE(j["fits"].contains("max_ratio"));
}

TEST(Cli, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  Report r;
  r.columns = {"text", "x"};
  r.rows.push_back({std::string("1/q <= 1/p, strict"), 0.5});
  r.rows.push_back({std::monostate{}, true});
  EXPECT_EQ(render_csv(r), "text,x\n\"1/q <= 1/p, strict\",0.5\n,true\n");
}

TEST(Cli, FailuresCarryWitnesses) {
  Report r;
  r.command = "transfer";
  r.columns = {"N"};
  r.rows.push_back({std::int64_t{4}});
  r.wall_ms.push_back(1.0);
  r.exit_code = kAssertionFailed;
  r.failures.push_back("NegativeSlack: example");
  r.witnesses.push_back({{"signal", {{"offset", 0}, {"values", {1.0}}}}});
  const auto j = render_json(r);
  EXPECT_EQ(j["exit_code"], 1);
  EXPECT_EQ(j["witnesses"][0]["signal"]["offset"], 0);
  EXPECT_EQ(j["rows"][0]["N"], 4);
}
