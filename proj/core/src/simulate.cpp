#include "cepcode/simulate.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cepcode/codebook.hpp"
#include "cepcode/rng.hpp"

namespace cep {
namespace {

constexpr const char* kCsvHeader =
    "snr_db,ebn0_db,trials,wer,ber,mean_expansions_per_info_bit,"
    "max_expansions,erasures";

struct Accum {
  std::uint64_t wordErrors = 0;
  std::uint64_t bitErrors = 0;
  std::uint64_t erasures = 0;
  std::uint64_t totalExpansions = 0;
  std::uint64_t maxExpansions = 0;
};

void runTrials(const ExperimentConfig& cfg, const std::vector<double>& sigma2,
               const std::vector<Codeword>* codebook, std::uint64_t first,
               std::uint64_t last, std::vector<Accum>& acc) {
  const CodeSpec& spec = cfg.spec;
  const int l = spec.n + spec.p - 1;
  for (std::uint64_t t = first; t < last; ++t) {
    Rng rng = Rng::substream(cfg.seed, t);
    const std::uint64_t sent = rng.uniformInt(spec.totalWords());
    const Codeword word = encode(spec, sent);
    const ChannelDraw ch = drawChannel(spec.p, l, cfg.coherencePeriod, rng);
    Eigen::VectorXcd unitNoise(l);
    for (int s = 0; s < l; ++s) unitNoise(s) = rng.complexGaussian(1.0);
    const Eigen::VectorXcd clean = transmitClean(word.bits, ch);

    for (std::size_t pt = 0; pt < sigma2.size(); ++pt) {
      const Eigen::VectorXcd y = clean + std::sqrt(sigma2[pt]) * unitNoise;
      std::uint64_t decoded = 0;
      std::uint64_t expansions = 0;
      bool erased = false;
      if (cfg.variant == DecoderVariant::Exhaustive) {
        decoded = decodeExhaustive(y, spec, *codebook).index;
      } else {
        const Heuristic heu = cfg.variant == DecoderVariant::PriorityH1
                                  ? Heuristic::H1
                                  : Heuristic::H2;
        const PriorityResult res = decodePriority(y, spec, heu, cfg.stackCap);
        expansions = res.expansions;
        if (res.ok) {
          decoded = res.index;
        } else {
          erased = true;
        }
      }
      Accum& a = acc[pt];
      a.totalExpansions += expansions;
      a.maxExpansions = std::max(a.maxExpansions, expansions);
      if (erased) {
        ++a.erasures;
        ++a.wordErrors;
        a.bitErrors += static_cast<std::uint64_t>(spec.k);
      } else if (decoded != sent) {
        ++a.wordErrors;
        a.bitErrors += static_cast<std::uint64_t>(std::popcount(decoded ^ sent));
      }
    }
  }
}

}  // namespace

std::vector<PointSummary> runExperiment(const ExperimentConfig& cfg) {
  const CodeSpec& spec = cfg.spec;
  if (cfg.trials == 0) throw std::invalid_argument("runExperiment: trials must be > 0");
  std::vector<double> sigma2;
  for (double s : cfg.snrDb) {
    sigma2.push_back(noiseVariance(spec.n, spec.p, s, cfg.convention));
  }
  std::vector<Codeword> codebook;
  if (cfg.variant == DecoderVariant::Exhaustive) codebook = enumerateCodebook(spec);

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), cfg.trials));

  std::vector<std::vector<Accum>> perThread(
      threads, std::vector<Accum>(sigma2.size()));
  {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (cfg.trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::uint64_t first = w * chunk;
      const std::uint64_t last = std::min(cfg.trials, first + chunk);
      if (first >= last) break;
      pool.emplace_back(runTrials, std::cref(cfg), std::cref(sigma2),
                        &codebook, first, last, std::ref(perThread[w]));
    }
    for (auto& th : pool) th.join();
  }

  std::vector<PointSummary> out;
  for (std::size_t pt = 0; pt < sigma2.size(); ++pt) {
    PointSummary ps;
    ps.snrDb = cfg.snrDb[pt];
    ps.ebn0Db = cfg.snrDb[pt] +
                10.0 * std::log10(static_cast<double>(spec.n) / spec.k);
    ps.trials = cfg.trials;
    ps.infoBits = spec.k;
    for (const auto& acc : perThread) {
      const Accum& a = acc[pt];
      ps.wordErrors += a.wordErrors;
      ps.bitErrors += a.bitErrors;
      ps.erasures += a.erasures;
      ps.totalExpansions += a.totalExpansions;
      ps.maxExpansions = std::max(ps.maxExpansions, a.maxExpansions);
    }
    out.push_back(ps);
  }
  return out;
}

void emitCsv(const std::vector<PointSummary>& points, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const auto& p : points) {
    std::ostringstream row;
    row << std::setprecision(17);
    row << p.snrDb << ',' << p.ebn0Db << ',' << p.trials << ',' << p.wer()
        << ',' << p.ber() << ',' << p.meanExpansionsPerInfoBit() << ','
        << p.maxExpansions << ',' << p.erasures;
    os << row.str() << '\n';
  }
}

std::vector<CsvRow> parseCsv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw std::runtime_error("parseCsv: missing or unexpected header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (f.size() != 8) throw std::runtime_error("parseCsv: bad column count");
    CsvRow r;
    try {
      r.snrDb = std::stod(f[0]);
      r.ebn0Db = std::stod(f[1]);
      r.trials = std::stoull(f[2]);
      r.wer = std::stod(f[3]);
      r.ber = std::stod(f[4]);
      r.meanExpansionsPerInfoBit = std::stod(f[5]);
      r.maxExpansions = std::stoull(f[6]);
      r.erasures = std::stoull(f[7]);
    } catch (const std::exception&) {
      throw std::runtime_error("parseCsv: bad field value");
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace cep
