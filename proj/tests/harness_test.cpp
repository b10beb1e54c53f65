#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cepcode/simulate.hpp"

using namespace cep;

namespace {

ExperimentConfig smallConfig() {
  ExperimentConfig cfg;
  cfg.spec = makeSpec(10, 5, 2, std::nullopt, TreeMode::Double);
  cfg.snrDb = {5.0, 10.0};
  cfg.trials = 200;
  cfg.seed = 11;
  return cfg;
}

std::string csvOf(const std::vector<PointSummary>& pts) {
  std::ostringstream os;
  emitCsv(pts, os);
  return os.str();
}

}  // namespace

TEST_CASE("experiment is deterministic and thread-count independent") {
  auto cfg = smallConfig();
  cfg.threads = 1;
  const auto a = runExperiment(cfg);
  cfg.threads = 4;
  const auto b = runExperiment(cfg);
  const auto c = runExperiment(cfg);
  CHECK(csvOf(a) == csvOf(b));
  CHECK(csvOf(b) == csvOf(c));
}

TEST_CASE("effectively noiseless run has zero errors") {
  auto cfg = smallConfig();
  cfg.snrDb = {300.0};
  cfg.trials = 100;
  const auto pts = runExperiment(cfg);
  CHECK(pts[0].wordErrors == 0);
  CHECK(pts[0].bitErrors == 0);
  CHECK(pts[0].erasures == 0);
}

TEST_CASE("h1 and h2 give identical error counts, different complexity") {
  auto cfg = smallConfig();
  cfg.snrDb = {5.0};
  cfg.trials = 300;
  cfg.variant = DecoderVariant::PriorityH1;
  const auto a = runExperiment(cfg);
  cfg.variant = DecoderVariant::PriorityH2;
  const auto b = runExperiment(cfg);
  CHECK(a[0].wordErrors == b[0].wordErrors);
  CHECK(a[0].bitErrors == b[0].bitErrors);
  CHECK(a[0].totalExpansions > b[0].totalExpansions);
}

TEST_CASE("priority decoding matches the exhaustive variant") {
  auto cfg = smallConfig();
  cfg.snrDb = {5.0};
  cfg.trials = 300;
  cfg.variant = DecoderVariant::Exhaustive;
  const auto a = runExperiment(cfg);
  cfg.variant = DecoderVariant::PriorityH2;
  const auto b = runExperiment(cfg);
  CHECK(a[0].wordErrors == b[0].wordErrors);
  CHECK(a[0].bitErrors == b[0].bitErrors);
}

TEST_CASE("csv roundtrip is lossless") {
  auto cfg = smallConfig();
  const auto pts = runExperiment(cfg);
  std::stringstream ss;
  emitCsv(pts, ss);
  const auto rows = parseCsv(ss);
  REQUIRE(rows.size() == pts.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].snrDb == pts[i].snrDb);
    CHECK(rows[i].ebn0Db == pts[i].ebn0Db);
    CHECK(rows[i].trials == pts[i].trials);
    CHECK(rows[i].wer == pts[i].wer());
    CHECK(rows[i].ber == pts[i].ber());
    CHECK(rows[i].meanExpansionsPerInfoBit == pts[i].meanExpansionsPerInfoBit());
    CHECK(rows[i].maxExpansions == pts[i].maxExpansions);
    CHECK(rows[i].erasures == pts[i].erasures);
    CHECK(rows[i].ebn0Db ==
          doctest::Approx(rows[i].snrDb + 10.0 * std::log10(10.0 / 5.0)));
  }
}

TEST_CASE("empty grid emits a header-only file") {
  std::ostringstream os;
  emitCsv({}, os);
  CHECK(os.str() ==
        "snr_db,ebn0_db,trials,wer,ber,mean_expansions_per_info_bit,"
        "max_expansions,erasures\n");
}

TEST_CASE("malformed csv is rejected") {
  std::istringstream bad1("nope\n");
  CHECK_THROWS_AS(static_cast<void>(parseCsv(bad1)), std::runtime_error);
  std::istringstream bad2(
      "snr_db,ebn0_db,trials,wer,ber,mean_expansions_per_info_bit,"
      "max_expansions,erasures\n1,2,3\n");
  CHECK_THROWS_AS(static_cast<void>(parseCsv(bad2)), std::runtime_error);
}

TEST_CASE("noise realizations are common across SNR points") {
  // one grid of two points vs two single-point runs: identical per point
  auto cfg = smallConfig();
  const auto both = runExperiment(cfg);
  cfg.snrDb = {5.0};
  const auto lo = runExperiment(cfg);
  cfg.snrDb = {10.0};
  const auto hi = runExperiment(cfg);
  CHECK(both[0].wordErrors == lo[0].wordErrors);
  CHECK(both[1].wordErrors == hi[0].wordErrors);
}
