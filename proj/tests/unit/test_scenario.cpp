#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "meqlab/errors.hpp"
#include "runner.hpp"
#include "scenario.hpp"

namespace meqlab::scenario {
namespace {

std::string data(const std::string& name) { return std::string(MEQLAB_TEST_DATA) + "/" + name; }

TEST(ScenarioParse, SingleDocument) {
  const auto s = parse_scenarios(R"(
name: one
operation: estimate
system: rotation
pairs:
  - {id: p, x: "0/1", y: "1/10"}
schedule: {max_exponent: 6, family: one_sided}
)",
                                 "inline");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].name, "one");
  EXPECT_EQ(s[0].output, "one");
  EXPECT_EQ(s[0].schedule.max_exponent, 6);
  EXPECT_EQ(s[0].schedule.family, WindowFamily::one_sided);
  ASSERT_EQ(s[0].pairs.size(), 1u);
  EXPECT_EQ(s[0].pairs[0].y, "1/10");
}

TEST(ScenarioParse, ListOfScenarios) {
  const auto s = parse_scenarios(R"(
scenarios:
  - {name: a, operation: classify, factor_map: tm.pi, seed: 1}
  - {name: b, operation: test-M, factor_map: ex62.pi, seed: 2}
)",
                                 "inline");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].operation, Operation::classify);
  EXPECT_EQ(s[1].operation, Operation::test_M);
  EXPECT_EQ(s[0].samples, 16u);
}

TEST(ScenarioParse, EmptyListHasNoScenarios) {
  EXPECT_TRUE(parse_scenarios("scenarios: []\n", "inline").empty());
  EXPECT_TRUE(load_scenario_file(data("empty.yaml")).empty());
}

TEST(ScenarioParse, SyntaxErrorCarriesPosition) {
  try {
    load_scenario_file(data("bad_syntax.yaml"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line "), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("column "), std::string::npos) << e.what();
  }
}

TEST(ScenarioParse, UnknownKeyPointsAtKey) {
  try {
    parse_scenarios("name: a\noperation: estimate\nsystem: rotation\nsamplez: 3\n", "inline");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(ScenarioParse, UnknownIdsReportedAtTheirNode) {
  try {
    load_scenario_file(data("unknown_system.yaml"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("klein-bottle"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_scenarios("name: a\noperation: classify\nfactor_map: nope.pi\nseed: 1\n", "inline"),
               ParseError);
}

TEST(ScenarioParse, SampledOperationsNeedSeed) {
  EXPECT_THROW(parse_scenarios("name: a\noperation: classify\nfactor_map: tm.pi\n", "inline"), ParseError);
}

TEST(ScenarioParse, BadPointLiteralRejected) {
  EXPECT_ANY_THROW(parse_scenarios(
      "name: a\noperation: estimate\nsystem: rotation\npairs: [{id: p, x: 'banana', y: '0/1'}]\n", "inline"));
}

TEST(ScenarioParse, DuplicatePairIdsRejected) {
  EXPECT_THROW(parse_scenarios("name: a\noperation: estimate\nsystem: rotation\npairs:\n"
                               "  - {id: p, x: '0/1', y: '1/2'}\n  - {id: p, x: '0/1', y: '1/3'}\n",
                               "inline"),
               ParseError);
}

TEST(ScenarioParse, MissingScenarioName) { EXPECT_THROW(load_scenarios("no-such-scenario"), Error); }

TEST(ScenarioParse, BundledScenariosAllParse) {
  ASSERT_FALSE(bundled_scenarios().empty());
  for (const auto& [name, text] : bundled_scenarios()) {
    EXPECT_NO_THROW(parse_scenarios(text, name)) << name;
  }
}

TEST(ScenarioRun, ThueMorseNegationIsOneAtEveryWindow) {
  const auto s = load_scenarios("tm-fibre-D");
  ASSERT_EQ(s.size(), 1u);
  const ScenarioResult r = run_scenario(s[0]);
  EXPECT_TRUE(r.ok());
  std::size_t seen = 0;
  for (const CsvRow& row : r.rows) {
    if (row.pair_id == "a5" && row.kind == "weyl") {
      EXPECT_EQ(row.value, 1.0) << row.window_len;
      ++seen;
    }
  }
  EXPECT_EQ(seen, 13u);
}

TEST(ScenarioRun, IntervalWeylNearTwoThirds) {
  const auto s = load_scenarios("ex61-weyl");
  const ScenarioResult r = run_scenario(s.at(0));
  const CsvRow* last = nullptr;
  for (const CsvRow& row : r.rows) {
    if (row.kind == "weyl" && (!last || row.window_len >= last->window_len)) last = &row;
  }
  ASSERT_NE(last, nullptr);
  EXPECT_NEAR(last->value, 2.0 / 3.0, 0.05 * 2.0 / 3.0);
}

TEST(ScenarioRun, CsvHeaderAndDeterminism) {
  const auto s = parse_scenarios(R"(
name: det
operation: classify
factor_map: sturm.pi
seed: 9
samples: 3
schedule: {max_exponent: 8}
)",
                                 "inline");
  const ScenarioResult a = run_scenario(s[0]);
  const ScenarioResult b = run_scenario(s[0]);
  const std::string csv = format_csv(a);
  EXPECT_EQ(csv.rfind(std::string(kCsvHeader) + "\n", 0), 0u);
  EXPECT_EQ(csv, format_csv(b));
  EXPECT_EQ(a.verdict.dump(), b.verdict.dump());
  EXPECT_NE(format_csv(run_scenario(s[0], 10)), csv);
}

TEST(ScenarioRun, ArtifactsWritten) {
  const auto s = load_scenarios("toeplitz-language");
  const ScenarioResult r = run_scenario(s.at(0));
  EXPECT_TRUE(r.ok());
  const auto dir = std::filesystem::temp_directory_path() / "meqlab-cli-test";
  std::filesystem::remove_all(dir);
  write_artifacts(r, dir.string());
  EXPECT_TRUE(std::filesystem::exists(dir / (r.output + ".csv")));
  EXPECT_TRUE(std::filesystem::exists(dir / (r.output + ".json")));
  std::filesystem::remove_all(dir);
}

TEST(ScenarioRun, FailedExpectationGivesExitTwo) {
  const auto s = load_scenario_file(data("failing_expectation.yaml"));
  const auto dir = std::filesystem::temp_directory_path() / "meqlab-cli-fail";
  std::ostringstream log;
  EXPECT_EQ(run_all(s, RunOptions{dir.string(), std::nullopt}, log), 2);
  EXPECT_NE(log.str().find("FAILED"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(ScenarioRegistry, ListsSystemsAndMaps) {
  std::ostringstream os;
  print_registry(os);
  const std::string text = os.str();
  EXPECT_NE(text.find("thuemorse"), std::string::npos);
  EXPECT_NE(text.find("tm.pi"), std::string::npos);
  EXPECT_LT(text.find("interval61"), text.find("thuemorse"));
}

}  // namespace
}  // namespace meqlab::scenario
