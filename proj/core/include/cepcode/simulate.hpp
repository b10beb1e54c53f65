#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cepcode/channel.hpp"
#include "cepcode/decoder.hpp"
#include "cepcode/gram.hpp"

namespace cep {

enum class DecoderVariant { Exhaustive, PriorityH1, PriorityH2 };

struct ExperimentConfig {
  CodeSpec spec;
  std::vector<double> snrDb;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  DecoderVariant variant = DecoderVariant::PriorityH2;
  SnrConvention convention = SnrConvention::Exact;
  int coherencePeriod = 0;  // samples; <= 0 means quasi-static
  std::uint64_t stackCap = kDefaultStackCap;
  int threads = 0;  // 0: hardware concurrency
};

struct PointSummary {
  double snrDb = 0.0;
  double ebn0Db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t wordErrors = 0;
  std::uint64_t bitErrors = 0;
  std::uint64_t erasures = 0;
  std::uint64_t totalExpansions = 0;
  std::uint64_t maxExpansions = 0;
  int infoBits = 0;

  double wer() const { return static_cast<double>(wordErrors) / trials; }
  double ber() const {
    return static_cast<double>(bitErrors) / (static_cast<double>(trials) * infoBits);
  }
  double meanExpansionsPerInfoBit() const {
    return static_cast<double>(totalExpansions) /
           (static_cast<double>(trials) * infoBits);
  }
};

// Monte Carlo sweep over the SNR grid. Trial t reuses one random substream
// of (seed, t) at every SNR point, so noise realizations are common across
// points and results are independent of the thread count.
std::vector<PointSummary> runExperiment(const ExperimentConfig& cfg);

// One CSV row per SNR point, deterministic formatting, lossless doubles:
// snr_db,ebn0_db,trials,wer,ber,mean_expansions_per_info_bit,max_expansions,erasures
void emitCsv(const std::vector<PointSummary>& points, std::ostream& os);

struct CsvRow {
  double snrDb, ebn0Db, wer, ber, meanExpansionsPerInfoBit;
  std::uint64_t trials, maxExpansions, erasures;
};

// Parses emitCsv output (header required). Throws std::runtime_error on
// malformed input.
std::vector<CsvRow> parseCsv(std::istream& is);

}  // namespace cep
