#include <benchmark/benchmark.h>

#include "cepcode/channel.hpp"
#include "cepcode/codebook.hpp"
#include "cepcode/decoder.hpp"
#include "cepcode/rng.hpp"

namespace {

struct Scenario {
  cep::CodeSpec spec;
  std::vector<Eigen::VectorXcd> bursts;
};

Scenario makeScenario(double snrDb) {
  Scenario s;
  s.spec = cep::makeSpec(22, 11, 2, std::nullopt, cep::TreeMode::Double);
  const int l = s.spec.n + 1;
  const double s2 =
      cep::noiseVariance(s.spec.n, 2, snrDb, cep::SnrConvention::Exact);
  for (std::uint64_t t = 0; t < 64; ++t) {
    cep::Rng rng = cep::Rng::substream(2024, t);
    const auto w = cep::encode(s.spec, rng.uniformInt(s.spec.totalWords()));
    const auto ch = cep::drawChannel(2, l, 0, rng);
    s.bursts.push_back(cep::transmit(w.bits, ch, s2, rng));
  }
  return s;
}

void decodeBench(benchmark::State& state, cep::Heuristic heu, double snrDb) {
  const Scenario s = makeScenario(snrDb);
  std::size_t i = 0;
  std::uint64_t expansions = 0, decodes = 0;
  for (auto _ : state) {
    const auto res = cep::decodePriority(s.bursts[i], s.spec, heu);
    benchmark::DoNotOptimize(res.index);
    expansions += res.expansions;
    ++decodes;
    i = (i + 1) % s.bursts.size();
  }
  state.counters["expansions/decode"] =
      static_cast<double>(expansions) / static_cast<double>(decodes);
}

}  // namespace

BENCHMARK_CAPTURE(decodeBench, h1_10db, cep::Heuristic::H1, 10.0);
BENCHMARK_CAPTURE(decodeBench, h2_10db, cep::Heuristic::H2, 10.0);
BENCHMARK_CAPTURE(decodeBench, h1_15db, cep::Heuristic::H1, 15.0);
BENCHMARK_CAPTURE(decodeBench, h2_15db, cep::Heuristic::H2, 15.0);

BENCHMARK_MAIN();
