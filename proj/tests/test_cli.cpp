#include "stiefel/cli.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>

using namespace stiefel;
using namespace stiefel::cli;

namespace {

CommandResult run(std::vector<std::string> args) { return run_cli(args, Environment{}); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
    } else {
      field += c;
    }
  }
  return rows;
}

std::pair<int, std::string> run_binary(const std::string& args) {
  std::string cmd = std::string(STIEFEL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cohomology, MarkdownTable) {
  auto r = run({"cohomology", "--space", "PW", "--n", "5", "--k", "2", "--p", "7", "--format", "markdown"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("Lambda(gamma_5) (x) Z_(7)[x] / (5 x^4, x^5)"), std::string::npos);
  EXPECT_NE(r.out.find("| 9 | Z_(7) |"), std::string::npos);
  EXPECT_NE(r.out.find("| 8 | 0 |"), std::string::npos);
}

TEST(Cohomology, JsonExteriorAlgebra) {
  auto r = run({"cohomology", "--space", "W", "--n", "3", "--k", "2", "--p", "5"});
  ASSERT_EQ(r.exit_code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["top_degree"], 10);
  std::vector<std::int64_t> free_degrees;
  for (const auto& row : j["table"])
    if (row["free_rank"] != 0) free_degrees.push_back(row["degree"]);
  EXPECT_EQ(free_degrees, (std::vector<std::int64_t>{0, 3, 5, 8}));
}

TEST(Cohomology, StiefelQuotientTable) {
  auto r = run({"cohomology", "--space", "WM", "--n", "4", "--k", "2", "--m", "10", "--p", "5", "--format", "csv"});
  ASSERT_EQ(r.exit_code, 0);
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 15u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"degree", "free_rank", "torsion_exponents", "module"}));
  EXPECT_EQ(rows[1 + 2][3], "Z/5");
  EXPECT_EQ(rows[1 + 5][3], "Z_(5)");
}

TEST(Cohomology, ExitCodes) {
  EXPECT_EQ(run({"cohomology", "--space", "WM", "--n", "4", "--k", "2", "--m", "3", "--p", "3"}).exit_code, 3);
  EXPECT_EQ(run({"cohomology", "--space", "PW", "--n", "2", "--k", "3", "--p", "5"}).exit_code, 2);
  EXPECT_EQ(run({"cohomology", "--space", "PW", "--n", "5", "--k", "2", "--p", "9"}).exit_code, 2);
  EXPECT_EQ(run({"cohomology", "--space", "XX", "--n", "5", "--k", "2", "--p", "7"}).exit_code, 2);
  auto missing = run({"cohomology", "--n", "5"});
  EXPECT_EQ(missing.exit_code, 2);
  EXPECT_NE(missing.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(run({}).exit_code, 2);
}

TEST(Verdict, Examples) {
  auto c = run({"verdict", "--space", "PW", "--n", "9", "--k", "3", "--p", "11"});
  EXPECT_EQ(c.exit_code, 0);
  auto j = Json::parse(c.out);
  EXPECT_EQ(j["theorem"], "C-unsplit");
  EXPECT_EQ(j["conclusion"]["label"], "CP^6 x S^15 x S^17");

  auto b = run({"verdict", "--space", "PW", "--n", "9", "--k", "8", "--p", "11"});
  EXPECT_EQ(b.exit_code, 0);
  EXPECT_EQ(Json::parse(b.out)["stable"], true);

  auto none = run({"verdict", "--space", "PW", "--n", "5", "--k", "2", "--p", "3"});
  EXPECT_EQ(none.exit_code, 1);
  EXPECT_EQ(Json::parse(none.out)["theorem"], "none");
}

TEST(Verdict, JsonIsDeterministic) {
  std::vector<std::string> args{"verdict", "--space", "PLW", "--n", "3", "--k", "2", "--l", "1,2", "--p", "7"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.exit_code, 1);
  auto j = Json::parse(a.out);
  EXPECT_EQ(j["schema_version"], 1);
}

TEST(Verdict, MarkdownRespectsColor) {
  Environment plain, color;
  color.color = true;
  std::vector<std::string> args{"verdict", "--space", "PW", "--n", "5", "--k", "2", "--p", "7", "--format",
                                "markdown"};
  auto a = run_cli(args, plain), b = run_cli(args, color);
  EXPECT_EQ(a.out.find('\x1b'), std::string::npos);
  EXPECT_NE(b.out.find('\x1b'), std::string::npos);
}

TEST(Certificate, Rendering) {
  auto r = run({"certificate", "--space", "PW", "--n", "5", "--k", "2", "--p", "7"});
  EXPECT_EQ(r.exit_code, 0);
  auto j = Json::parse(r.out);
  ASSERT_EQ(j["conditions"].size(), 3u);
  EXPECT_EQ(j["conditions"][0]["id"], 1);
  EXPECT_EQ(j["verdict"], true);
  EXPECT_EQ(run({"certificate", "--space", "W", "--n", "5", "--k", "2", "--p", "7"}).exit_code, 2);
}

TEST(Model, Differential) {
  auto r = run({"model", "--n", "5", "--k", "2", "--format", "json"});
  ASSERT_EQ(r.exit_code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["differential"]["y~_4"], "x~^4");
  EXPECT_EQ(j["differential"]["y~_5"], "0");
}

TEST(Verify, SinglePointMatches) {
  auto r = run({"verify", "--space", "PW", "--n", "5", "--k", "2", "--p", "7"});
  EXPECT_EQ(r.exit_code, 0);
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][5], "match");
}

TEST(Verify, PerturbationIsCaught) {
  auto r = run({"verify", "--space", "PW", "--n", "5", "--k", "2", "--p", "7", "--perturb"});
  EXPECT_EQ(r.exit_code, 1);
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][5], "mismatch");
  EXPECT_EQ(rows[1][7], "15");
  auto at = run({"verify", "--space", "PW", "--n", "4", "--k", "2", "--p", "5", "--perturb-degree", "6"});
  EXPECT_EQ(parse_csv(at.out)[1][7], "6");
}

// The presentation can carry torsion above the manifold dimension, where the
// engine (and the manifold) has nothing; the report must locate it there.
TEST(Verify, TorsionAboveDimensionIsReported) {
  auto r = run({"verify", "--space", "PW", "--n", "3", "--k", "2", "--p", "3", "--format", "json"});
  EXPECT_EQ(r.exit_code, 1);
  auto j = Json::parse(r.out);
  const auto& row = j["rows"][0];
  EXPECT_EQ(row["engine_vanishes_above_dim"], "true");
  EXPECT_GT(std::stoll(row["first_degree"].get<std::string>()), 7);
  EXPECT_EQ(row["engine"], "0");
}

TEST(Verify, QuotientFibrationPoint) {
  auto r = run({"verify", "--space", "WM", "--n", "4", "--k", "2", "--m", "5", "--p", "5", "--format", "json"});
  EXPECT_EQ(r.exit_code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["comparison"]["equal"], true);
  EXPECT_EQ(j["witness"]["module"], "Z_(5)");
  EXPECT_EQ(j["witness"]["is_e_times_x_power"], true);
}

TEST(Verify, TraceIsJson) {
  auto r = run({"verify", "--space", "PW", "--n", "3", "--k", "2", "--p", "5", "--trace"});
  ASSERT_EQ(r.exit_code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["last_nonzero_differential"], 4);
  EXPECT_FALSE(j["pages"].empty());
  EXPECT_EQ(j["e_infinity"]["r"], "infinity");
}

TEST(Verify, GridCapsAndBounds) {
  EXPECT_EQ(run({"verify", "--grid", "9", "13"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "--grid", "6", "97"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "--grid", "1", "13"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "--space", "PW", "--n", "3", "--k", "2", "--p", "3", "--max-degree", "500"}).exit_code, 2);
  EXPECT_EQ(run({"verify"}).exit_code, 2);
}

TEST(Verify, SmallGridRowOrderAndWorkers) {
  VerifyGridOptions one{3, 7, std::nullopt, 1}, many{3, 7, std::nullopt, 4};
  auto a = cmd_verify_grid(one, OutputFormat::csv), b = cmd_verify_grid(many, OutputFormat::csv);
  EXPECT_EQ(a.out, b.out);
  auto rows = parse_csv(a.out);
  ASSERT_EQ(rows.size(), 1u + 5u * 3u);
  EXPECT_EQ(rows[1][0], "2");
  EXPECT_EQ(rows[1][2], "3");
  EXPECT_EQ(rows.back()[0], "3");
  EXPECT_EQ(rows.back()[2], "7");
}

TEST(Table, CsvMatchesJson) {
  std::vector<std::string> base{"table", "--space", "PW", "--n-range", "2..6", "--p-set", "5,7,11"};
  auto csv_args = base, json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  auto csv = run(csv_args), json = run(json_args);
  ASSERT_EQ(csv.exit_code, 0);
  auto rows = parse_csv(csv.out);
  auto j = Json::parse(json.out);
  ASSERT_EQ(rows.size(), j["rows"].size() + 1);
  for (std::size_t c = 0; c < rows[0].size(); ++c) EXPECT_EQ(rows[0][c], j["columns"][c]);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (std::size_t c = 0; c < rows[0].size(); ++c) EXPECT_EQ(rows[i][c], j["rows"][i - 1][rows[0][c]]);
}

TEST(Table, LowKAtLargePrimesAlwaysUnstable) {
  auto r = run({"table", "--space", "PW", "--n-range", "2..8", "--p-set", "5,7,11,13"});
  auto rows = parse_csv(r.out);
  int checked = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto n = std::stoll(rows[i][1]), k = std::stoll(rows[i][2]), p = std::stoll(rows[i][4]);
    if (p > n && 2 * k < n) {
      EXPECT_TRUE(rows[i][6] == "A-largepdec" || rows[i][6] == "C-unsplit") << n << " " << k << " " << p;
      ++checked;
    }
    if (rows[i][6] == "none" && p > n + 1) {
      EXPECT_EQ(rows[i][10], "false");
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Table, RowOrderIsLexicographic) {
  auto r = run({"table", "--space", "W", "--n-range", "2..4", "--k-range", "1..2", "--p-set", "7,3"});
  auto rows = parse_csv(r.out);
  std::vector<std::array<long long, 3>> keys;
  for (std::size_t i = 1; i < rows.size(); ++i)
    keys.push_back({std::stoll(rows[i][1]), std::stoll(rows[i][2]), std::stoll(rows[i][4])});
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(keys.size(), 12u);
}

TEST(Table, BadRanges) {
  EXPECT_EQ(run({"table", "--n-range", "5..2"}).exit_code, 2);
  EXPECT_EQ(run({"table", "--n-range", "abc"}).exit_code, 2);
  EXPECT_EQ(run({"table", "--p-set", "4"}).exit_code, 2);
}

TEST(Binary, MatchesInProcessOutput) {
  auto [code, out] = run_binary("verdict --space PW --n 9 --k 3 --p 11");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(out, run({"verdict", "--space", "PW", "--n", "9", "--k", "3", "--p", "11"}).out);
  auto [none_code, none_out] = run_binary("verdict --space PW --n 5 --k 2 --p 3");
  EXPECT_EQ(none_code, 1);
  auto [bad_code, bad_out] = run_binary("cohomology --space WM --n 4 --k 2 --m 3 --p 3");
  EXPECT_EQ(bad_code, 3);
}

TEST(Environment, ReadsWidthAndColor) {
  setenv("STIEFEL_WIDTH", "40", 1);
  setenv("STIEFEL_COLOR", "always", 1);
  auto e = Environment::from_env();
  EXPECT_EQ(e.width, 40u);
  EXPECT_TRUE(e.color);
  setenv("STIEFEL_WIDTH", "5", 1);
  unsetenv("STIEFEL_COLOR");
  e = Environment::from_env();
  EXPECT_EQ(e.width, 100u);
  EXPECT_FALSE(e.color);
  unsetenv("STIEFEL_WIDTH");
}
