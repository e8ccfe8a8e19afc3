#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "fracvex/error.hpp"
#include "fracvex/expr.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fracvex::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fracvex_cli_" + name);
}

}  // namespace

TEST(Cli, EvalExamples) {
  const auto r = run({"eval", "--expr", "E(x^a)", "--alpha", "0.5", "--at", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json_of(r)["value"].get<double>(), 5.00898, 1e-4);
  const auto f = run({"eval", "--expr", "x^(3a) + x^a", "--alpha", "0.5", "--at", "2", "--mode", "fractal"});
  EXPECT_DOUBLE_EQ(json_of(f)["base"].get<double>(), 10.0);
}

TEST(Cli, IntegrateAndDiff) {
  const auto r = run({"integrate", "--expr", "x^(3a)", "--from", "0", "--to", "1", "--alpha", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(json_of(r)["value"].get<double>(), 0.25);
  const auto d = run({"diff", "--expr", "(x+1/x)^(10a)", "--alpha", "0.5", "--order", "2", "--at", "0.5"});
  ASSERT_EQ(d.code, 0) << d.err;
  const auto j = json_of(d);
  const double direct = fracvex::eval_real(fracvex::parse(j["derivative"].get<std::string>()), 0.5,
                                           fracvex::Alpha(0.5));
  EXPECT_EQ(j["value"].get<double>(), direct);
}

TEST(Cli, ReportSchema) {
  const auto r = run({"verify", "hh", "--expr", "x^(3a)", "--interval", "0,1", "--alpha", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  for (const char* key : {"check", "alpha", "mode", "lhs", "mid", "rhs", "margins", "satisfied",
                          "tolerance", "witnesses", "grid"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["grid"].is_null());
  EXPECT_NEAR(j["lhs"].get<double>(), 0.353553, 1e-6);
  EXPECT_NEAR(j["mid"].get<double>(), 0.589049, 1e-6);
  EXPECT_NEAR(j["rhs"].get<double>(), 0.707107, 1e-6);
  EXPECT_EQ(fracvex::parse(j["expr"].get<std::string>()), fracvex::parse("x^(3a)"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "powermean", "--data", "1,2", "--s", "1", "--t", "2", "--alpha", "0.5",
                 "--mode", "real"}).code,
            fracvex::cli::kExitViolated);
  EXPECT_EQ(run({"verify", "powermean", "--data", "1,2", "--s", "1", "--t", "2", "--alpha", "0.5"}).code,
            fracvex::cli::kExitOk);
  EXPECT_EQ(run({"convexity", "--expr", "-x^(2a)", "--interval", "0,2", "--alpha", "0.5"}).code,
            fracvex::cli::kExitViolated);
  const auto bad = run({"eval", "--expr", "x +", "--at", "1"});
  EXPECT_EQ(bad.code, fracvex::cli::kExitError);
  EXPECT_NE(bad.err.find("offset"), std::string::npos);
  EXPECT_EQ(run({"eval", "--expr", "1/x", "--at", "0"}).code, fracvex::cli::kExitError);
  EXPECT_EQ(run({"eval", "--expr", "x", "--at", "1", "--alpha", "2"}).code, fracvex::cli::kExitError);
  EXPECT_EQ(run({"bogus"}).code, fracvex::cli::kExitError);
  EXPECT_EQ(run({"eval", "--nope"}).code, fracvex::cli::kExitError);
  EXPECT_EQ(run({"sweep", "--check", "hh", "--expr", "x^(3a)", "--interval", "0,1", "--alphas", "0.5",
                 "--out", "/nonexistent-dir/x.csv"}).code,
            fracvex::cli::kExitError);
}

TEST(Cli, ExamplesCommand) {
  const auto r = run({"examples", "--id", "5.4", "--alpha", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_NEAR(j["lhs"].get<double>(), 1e10 / 19683.0, 1e-6);
  EXPECT_NEAR(j["rhs"].get<double>(), j["lhs"].get<double>(), 1e-6);
  const auto p = run({"examples", "--id", "5.3", "--data", "1,2", "--s", "1", "--t", "2", "--alpha", "0.5"});
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(run({"examples", "--id", "5.1", "--inputs", "a=0.5,b=0.5", "--alpha", "0.5"}).code, 0);
}

TEST(Cli, SweepRowsAndDeterminism) {
  const std::vector<std::string> args{"sweep", "--check", "hh", "--expr", "x^(3a)", "--interval", "0,1",
                                      "--alphas", "0.25:1.0:0.25"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "alpha,mode,lhs,mid,rhs,margin1,margin2,satisfied");
  EXPECT_EQ(rows[4], "1,real,0.125,0.25,0.5,0.25,0.125,true");
}

TEST(Cli, RiemannSweep) {
  const auto r = run({"sweep", "--check", "riemann-diag", "--expr", "1", "--interval", "0,1", "--alphas", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "alpha,n,sum,growth_exponent");
  const double slope = std::stod(row.substr(row.rfind(',') + 1));
  EXPECT_NEAR(slope, 0.5, 0.05);
}

TEST(Cli, ConfigPrecedence) {
  const auto cfg = temp_path("config.json");
  {
    std::ofstream f(cfg);
    f << R"cfg({"expr": "x^(3a)", "alpha": 0.5, "at": 2})cfg";
  }
  const auto from_file = run({"eval", "--config", cfg.string()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_NEAR(json_of(from_file)["value"].get<double>(), 2.828427, 1e-6);
  const auto overridden = run({"eval", "--config", cfg.string(), "--alpha", "1"});
  EXPECT_DOUBLE_EQ(json_of(overridden)["value"].get<double>(), 8.0);
  std::filesystem::remove(cfg);
}

TEST(Cli, OutputFileAndFormats) {
  const auto path = temp_path("out.json");
  const auto r = run({"eval", "--expr", "x", "--at", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["value"].get<double>(), 3.0);
  std::filesystem::remove(path);
  const auto csv = run({"verify", "cs", "--as", "1,2", "--bs", "2,1", "--alpha", "0.5", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "alpha,mode,lhs,mid,rhs,margin1,margin2,satisfied");
  const auto text = run({"verify", "cs", "--as", "1,2", "--bs", "2,1", "--alpha", "0.5", "--format", "text"});
  EXPECT_NE(text.out.find("satisfied: true"), std::string::npos);
}

TEST(Cli, AlphaRange) {
  const auto a = fracvex::cli::parse_alpha_range("0.25:1.0:0.25");
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a.back(), 1.0);
  EXPECT_EQ(fracvex::cli::parse_alpha_range("0.1:1:0.1").size(), 10u);
  EXPECT_EQ(fracvex::cli::parse_alpha_range("0.3,0.6").size(), 2u);
  EXPECT_THROW(fracvex::cli::parse_alpha_range("0.5:0.1:0.1"), fracvex::Error);
  EXPECT_THROW(fracvex::cli::parse_alpha_range("0:1:0.5"), fracvex::Error);
}
