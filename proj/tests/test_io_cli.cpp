#include <gtest/gtest.h>

#include <sstream>

#include "commands.hpp"
#include "mfpt/io.hpp"
#include "support.hpp"

using namespace mfpt;
using mfpt::test::make_spec;
using mfpt::test::q;

namespace {

std::string capture(void (*fn)(std::ostream&, const cli::run_config&), const cli::run_config& cfg) {
  std::ostringstream os;
  fn(os, cfg);
  return os.str();
}

std::size_t line_count(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

cli::run_config point(oscillator_kind kind, const char* g) {
  cli::run_config cfg;
  cfg.kind = kind;
  cfg.g = q(g);
  return cfg;
}

}  // namespace

// ---------------------------------------------------------------- series JSON

TEST(SeriesJson, ExactDumpMatchesFixture) {
  auto cfg = point(oscillator_kind::qdwo, "1/3");
  cfg.orders = 5;
  cfg.format = cli::output_format::json;
  EXPECT_EQ(capture(cli::run_series, cfg), "[\"1/4\",\"0\",\"-1/24\",\"1/16\",\"-791/3456\",\"7273/6912\"]\n");
}

TEST(SeriesJson, IrrationalRootFallsBackToFloatObject) {
  precision_guard g(40);
  auto cfg = point(oscillator_kind::qaho, "0.1");
  cfg.orders = 3;
  cfg.format = cli::output_format::json;
  const auto doc = json::parse(capture(cli::run_series, cfg));
  ASSERT_TRUE(doc.is_object());
  EXPECT_EQ(doc["mode"], "float");
  EXPECT_EQ(doc["precision"], 40);
  EXPECT_EQ(doc["corrections"].size(), 4u);
}

TEST(SeriesJson, ExactRoundTrip) {
  const auto s = compute_corrections(make_spec(oscillator_kind::saho, "8/15"), 8);
  const auto parsed = parse_series_text(series_to_json(s).dump());
  EXPECT_EQ(parsed.mode, arithmetic_mode::exact_rational);
  EXPECT_EQ(series_from_parsed<rational>(parsed).corrections, s.corrections);
}

TEST(SeriesJson, FloatRoundTripReproducesBorelSumExactly) {
  precision_guard g(100);
  const auto s = compute_corrections(convert_spec<real>(make_spec(oscillator_kind::qaho, "10")), 12);
  const auto back = series_from_parsed<real>(parse_series_text(series_to_json(s).dump()));
  ASSERT_EQ(back.corrections, s.corrections);
  borel_config cfg;
  cfg.r_c = real("2.133");
  cfg.N_c = 8;
  EXPECT_EQ(borel_sum(back, cfg).delta_E, borel_sum(s, cfg).delta_E);
}

TEST(SeriesJson, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_series_text("[1, 2]"), parse_error);
  EXPECT_THROW(parse_series_text("[\"1/0\"]"), parse_error);
  EXPECT_THROW(parse_series_text("{\"corrections\": [\"1\"]}"), parse_error);
  EXPECT_THROW(parse_series_text("{\"mode\": \"float\", \"corrections\": [\"x1\"]}"), parse_error);
  EXPECT_THROW(parse_series_text("[]"), parse_error);
  EXPECT_THROW(parse_series_text("not json"), parse_error);
  EXPECT_THROW(series_from_parsed<rational>(parse_series_text("{\"mode\": \"float\", \"corrections\": [\"1.5\"]}")),
               domain_error);
}

TEST(SummationJson, FieldsInContractOrder) {
  precision_guard g(60);
  const auto spec = make_spec(oscillator_kind::qaho, "1");
  const auto s = compute_corrections(convert_spec<real>(spec), 8);
  borel_config cfg;
  cfg.r_c = real("2.667");
  cfg.N_c = 7;
  const auto doc = summation_to_json(borel_sum(s, cfg), spec);
  std::vector<std::string> keys;
  for (const auto& item : doc.items()) keys.push_back(item.key());
  const std::vector<std::string> expected{"method", "g",       "xi",    "kind",      "gamma",          "r_c",
                                          "p_exp",  "N",       "delta_E", "E_tot", "converged", "error_estimate"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(doc["method"], "borel");
  EXPECT_EQ(doc["xi"], "1/2");
  EXPECT_TRUE(doc["p_exp"].is_null());
}

// ---------------------------------------------------------------- commands

TEST(Commands, SolveQuarticBothMethods) {
  precision_guard g(100);
  auto cfg = point(oscillator_kind::qaho, "1");
  cfg.orders = 12;
  const auto rep = cli::solve(cfg);
  ASSERT_TRUE(rep.mot && rep.borel && rep.estimate);
  EXPECT_EQ(rep.mot->order, 3);
  EXPECT_NEAR(to_double(rep.borel->E_tot), 0.8038, 5e-5);
  EXPECT_EQ(rep.borel->order, 11);
}

TEST(Commands, SolveSexticWithSuppliedRadius) {
  precision_guard g(100);
  auto cfg = point(oscillator_kind::saho, "1");
  cfg.gamma = q("0.5");
  cfg.r_c = q("8.56");
  cfg.N_c = 20;
  const auto rep = cli::solve(cfg);
  EXPECT_NEAR(to_double(rep.borel->delta_E), -0.0328, 2e-4);
  EXPECT_FALSE(rep.estimate.has_value());
}

TEST(Commands, PhaseGateExitsWithDomainCode) {
  precision_guard g(50);
  try {
    cli::solve(point(oscillator_kind::qdwo, "0.05"));
    FAIL() << "expected phase_error";
  } catch (const phase_error& e) {
    EXPECT_EQ(e.exit_code(), 3);
  }
}

TEST(Commands, OracleReproducesSexticRow) {
  auto cfg = point(oscillator_kind::saho, "200");
  cfg.basis = 400;
  EXPECT_NEAR(std::stod(capture(cli::run_oracle, cfg)), 2.5942, 5e-5);
}

TEST(Commands, SweepHasOneRowPerGridPoint) {
  precision_guard g(60);
  auto cfg = point(oscillator_kind::qaho, "1");
  cfg.g_grid = "0.1:100:log:10";
  cfg.format = cli::output_format::csv;
  const auto out = capture(cli::run_sweep, cfg);
  EXPECT_EQ(line_count(out), 11u);
  EXPECT_EQ(out.substr(0, out.find('\n')), "g,E0,E_MOT,E_tot,E_exact,note");
  EXPECT_EQ(out, capture(cli::run_sweep, cfg));
}

TEST(Commands, GridParsing) {
  EXPECT_EQ(cli::grid_points(cli::parse_grid("1:3:lin:3")), (std::vector<rational>{1, 2, 3}));
  EXPECT_EQ(cli::grid_points(cli::parse_grid("1:100:log:3")), (std::vector<rational>{1, 10, 100}));
  EXPECT_THROW(cli::parse_grid("1:2:log"), parse_error);
  EXPECT_THROW(cli::parse_grid("1:2:cubic:3"), parse_error);
  EXPECT_THROW(cli::parse_grid("1:2:log:x"), parse_error);
  EXPECT_THROW(cli::parse_grid("0:2:log:3"), domain_error);
}

TEST(Commands, TableIsDeterministicAndMirrorsColumns) {
  precision_guard g(100);
  cli::run_config cfg;
  cfg.format = cli::output_format::csv;
  const auto a = capture(cli::run_table1, cfg);
  EXPECT_EQ(a, capture(cli::run_table1, cfg));
  EXPECT_EQ(line_count(a), 14u);
  EXPECT_EQ(a.rfind("kind,g,N0,E_MOT,Er_MOT,r_c,N_c,delta_E,E0,E_tot,Exact,Er_tot,", 0), 0u);
  cfg.format = cli::output_format::json;
  EXPECT_EQ(json::parse(capture(cli::run_table1, cfg)).size(), 13u);
}

TEST(Commands, FormatAndOriginParsing) {
  EXPECT_EQ(cli::parse_format("csv"), cli::output_format::csv);
  EXPECT_THROW(cli::parse_format("xml"), parse_error);
  EXPECT_EQ(cli::parse_origin("well-bottom"), energy_origin::well_bottom);
  EXPECT_THROW(cli::parse_origin("top"), parse_error);
  EXPECT_THROW(parse_kind("quartic"), parse_error);
}
