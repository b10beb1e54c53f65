#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cepcode/channel.hpp"
#include "cepcode/codebook.hpp"
#include "cepcode/counting.hpp"
#include "cepcode/decoder.hpp"
#include "cepcode/gram.hpp"
#include "cepcode/simulate.hpp"

namespace {

struct SpecArgs {
  int n = 0;
  int k = 0;
  int p = 2;
  int q = 0;  // 0: quasi-static
  std::string mode = "double";
};

void addSpecOptions(CLI::App* cmd, SpecArgs& args, bool needK) {
  cmd->add_option("--n", args.n, "Codeword length N")->required();
  auto* k = cmd->add_option("--k", args.k, "Information bits K");
  if (needK) k->required();
  cmd->add_option("--p", args.p, "Channel taps P");
  cmd->add_option("--q", args.q, "Design sub-block period Q (0: quasi-static)");
  cmd->add_option("--mode", args.mode, "Tree mode: single or double")
      ->check(CLI::IsMember({"single", "double"}));
}

cep::CodeSpec buildSpec(const SpecArgs& args) {
  std::optional<int> q;
  if (args.q > 0) q = args.q;
  const cep::TreeMode mode =
      args.mode == "single" ? cep::TreeMode::Single : cep::TreeMode::Double;
  return cep::makeSpec(args.n, args.k, args.p, q, mode);
}

std::string bitsToString(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += b > 0 ? '+' : '-';
  return s;
}

std::vector<int> parsePrefix(const std::string& s) {
  std::vector<int> bits;
  for (char c : s) {
    if (c == '+') {
      bits.push_back(1);
    } else if (c == '-') {
      bits.push_back(-1);
    } else {
      throw CLI::ValidationError("--prefix", "prefix must contain only + and -");
    }
  }
  return bits;
}

Eigen::VectorXcd readBurst(std::istream& is) {
  std::vector<std::complex<double>> samples;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double re = 0.0, im = 0.0;
    if (!(ss >> re >> im)) throw std::runtime_error("decode: bad sample line: " + line);
    samples.emplace_back(re, im);
  }
  Eigen::VectorXcd y(static_cast<int>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) y(static_cast<int>(i)) = samples[i];
  return y;
}

int runVerify(const cep::CodeSpec& spec) {
  const auto book = cep::enumerateCodebook(spec);
  std::size_t bad = 0;
  for (std::uint64_t i = 0; i < book.size(); ++i) {
    const auto& w = book[i];
    bool ok = w.bits.front() == -1;
    auto gram = cep::verifyGram(w.bits, spec.p, spec.q);
    auto want = cep::targetMatrices(spec.n, spec.p, spec.q, spec.targets[w.tree]);
    for (std::size_t b = 0; ok && b < gram.size(); ++b) {
      if ((gram[b] - want[b]).cwiseAbs().maxCoeff() != 0) ok = false;
    }
    try {
      if (cep::codewordIndex(spec, w) != i) ok = false;
    } catch (const std::exception&) {
      ok = false;
    }
    for (std::uint64_t j = i + 1; ok && j < book.size(); ++j) {
      if (book[j].bits == w.bits) ok = false;
    }
    if (!ok) {
      ++bad;
      std::cerr << "invalid codeword at index " << i << "\n";
    }
  }
  std::cout << (bad == 0 ? "ok" : "failed") << ": " << book.size()
            << " codewords, " << bad << " invalid\n";
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-orthogonal block codes for joint channel estimation and "
               "error protection: encoder, counting tools, ML decoders and "
               "Monte Carlo harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  SpecArgs spec;
  std::uint64_t seed = 1;
  std::vector<double> snr;
  std::uint64_t trials = 10000;
  std::string heuristic = "h2";
  int qChan = 0;
  std::string snrConvention = "exact";
  std::uint64_t stackCap = cep::kDefaultStackCap;
  std::string tracePath;

  // encode
  auto* cmdEncode = app.add_subcommand("encode", "Map an information index to a codeword");
  std::uint64_t index = 0;
  addSpecOptions(cmdEncode, spec, true);
  cmdEncode->add_option("--index", index, "Information index in [0, 2^K)")->required();

  // codebook
  auto* cmdBook = app.add_subcommand("codebook", "Dump all codewords (index, tree, bits)");
  addSpecOptions(cmdBook, spec, true);

  // count
  auto* cmdCount = app.add_subcommand("count", "Count codeword-tree suffixes of a prefix");
  std::string prefixStr;
  std::string cStr;
  addSpecOptions(cmdCount, spec, false);
  cmdCount->add_option("--prefix", prefixStr, "Prefix bits as +/- characters")->required();
  cmdCount->add_option("--c", cStr, "Comma-separated Gram off-diagonal targets "
                                    "(default: first admissible)");

  // tables
  auto* cmdTables = app.add_subcommand("tables", "Emit the P = 3 suffix-count table as CSV");
  int tableP = 3;
  int tableK = 5;
  std::string tailStr = "--";
  cmdTables->add_option("--p", tableP, "Channel taps P (only 3 supported)");
  cmdTables->add_option("--k", tableK, "Remaining length k")->required();
  cmdTables->add_option("--tail", tailStr, "Last P - 1 prefix bits as +/- characters");

  // decode
  auto* cmdDecode = app.add_subcommand("decode", "Decode a received burst (re,im per line)");
  std::string inputPath = "-";
  bool exhaustive = false;
  addSpecOptions(cmdDecode, spec, true);
  cmdDecode->add_option("--input", inputPath, "Burst file, - for stdin");
  cmdDecode->add_option("--heuristic", heuristic, "Search heuristic")
      ->check(CLI::IsMember({"h1", "h2"}));
  cmdDecode->add_flag("--exhaustive", exhaustive, "Scan the whole codebook instead");
  cmdDecode->add_option("--stack-cap", stackCap, "Open-list capacity");
  cmdDecode->add_option("--trace", tracePath, "Write per-expansion CSV trace here");

  // simulate
  auto* cmdSim = app.add_subcommand("simulate", "Monte Carlo WER/BER/complexity sweep");
  int threads = 0;
  std::string outPath = "-";
  addSpecOptions(cmdSim, spec, true);
  cmdSim->add_option("--snr", snr, "SNR grid points in dB")->required()->delimiter(',');
  cmdSim->add_option("--trials", trials, "Trials per SNR point");
  cmdSim->add_option("--seed", seed, "RNG seed")->envname("CEPCODE_SEED");
  cmdSim->add_option("--heuristic", heuristic, "Search heuristic")
      ->check(CLI::IsMember({"h1", "h2"}));
  cmdSim->add_flag("--exhaustive", exhaustive, "Use the exhaustive ML decoder");
  cmdSim->add_option("--q-chan", qChan, "Channel coherence period in samples "
                                        "(0: quasi-static)");
  cmdSim->add_option("--snr-convention", snrConvention, "exact or asymptotic")
      ->check(CLI::IsMember({"exact", "asymptotic"}));
  cmdSim->add_option("--stack-cap", stackCap, "Open-list capacity");
  cmdSim->add_option("--threads", threads, "Worker threads (0: all cores)");
  cmdSim->add_option("--out", outPath, "CSV output path, - for stdout");

  // verify
  auto* cmdVerify = app.add_subcommand("verify", "Check codebook invariants");
  addSpecOptions(cmdVerify, spec, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmdEncode->parsed()) {
      const auto cs = buildSpec(spec);
      const auto w = cep::encode(cs, index);
      std::cout << index << '\t' << w.tree + 1 << '\t' << bitsToString(w.bits) << '\n';
      return 0;
    }
    if (cmdBook->parsed()) {
      cep::exportCodebook(buildSpec(spec), std::cout);
      return 0;
    }
    if (cmdCount->parsed()) {
      const auto prefix = parsePrefix(prefixStr);
      std::optional<int> q;
      if (spec.q > 0) q = spec.q;
      std::vector<int> c;
      if (cStr.empty()) {
        c = cep::admissibleTargets(spec.n, spec.p, q).front().offdiag;
      } else {
        std::stringstream ss(cStr);
        std::string tok;
        while (std::getline(ss, tok, ',')) c.push_back(std::stoi(tok));
      }
      cep::CodeSpec cs;
      cs.n = spec.n;
      cs.p = spec.p;
      cs.q = q;
      cs.targets.push_back(cep::GramTarget{c});
      std::cout << cep::countSuffixes(cs, 0, prefix) << '\n';
      return 0;
    }
    if (cmdTables->parsed()) {
      if (tableP != 3) throw std::runtime_error("tables: only --p 3 is supported");
      if (tailStr.size() != 2) throw std::runtime_error("tables: tail needs 2 bits");
      const auto tail = parsePrefix(tailStr);
      cep::writeCountTableCsv(std::cout, tableK, tail[0], tail[1]);
      return 0;
    }
    if (cmdDecode->parsed()) {
      const auto cs = buildSpec(spec);
      Eigen::VectorXcd y;
      if (inputPath == "-") {
        y = readBurst(std::cin);
      } else {
        std::ifstream in(inputPath);
        if (!in) throw std::runtime_error("decode: cannot open " + inputPath);
        y = readBurst(in);
      }
      if (exhaustive) {
        const auto res = cep::decodeExhaustive(y, cs, cep::enumerateCodebook(cs));
        std::cout << res.index << '\t' << res.word.tree + 1 << '\t'
                  << bitsToString(res.word.bits) << "\texpansions=0\n";
        return 0;
      }
      const cep::Heuristic heu =
          heuristic == "h1" ? cep::Heuristic::H1 : cep::Heuristic::H2;
      std::ofstream traceFile;
      std::ostream* trace = nullptr;
      if (!tracePath.empty()) {
        traceFile.open(tracePath);
        if (!traceFile) throw std::runtime_error("decode: cannot open " + tracePath);
        trace = &traceFile;
      }
      const auto res = cep::decodePriority(y, cs, heu, stackCap, trace);
      if (!res.ok) {
        std::cerr << "erasure: open list exceeded " << stackCap << " paths\n";
        return 1;
      }
      std::cout << res.index << '\t' << res.word.tree + 1 << '\t'
                << bitsToString(res.word.bits) << "\texpansions=" << res.expansions
                << '\n';
      return 0;
    }
    if (cmdSim->parsed()) {
      cep::ExperimentConfig cfg;
      cfg.spec = buildSpec(spec);
      cfg.snrDb = snr;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.variant = exhaustive ? cep::DecoderVariant::Exhaustive
                    : heuristic == "h1" ? cep::DecoderVariant::PriorityH1
                                        : cep::DecoderVariant::PriorityH2;
      cfg.convention = snrConvention == "asymptotic" ? cep::SnrConvention::Asymptotic
                                                     : cep::SnrConvention::Exact;
      cfg.coherencePeriod = qChan;
      cfg.stackCap = stackCap;
      cfg.threads = threads;
      const auto points = cep::runExperiment(cfg);
      for (const auto& p : points) {
        const double se =
            std::sqrt(p.wer() * (1.0 - p.wer()) / static_cast<double>(p.trials));
        std::cerr << "snr " << p.snrDb << " dB: wer " << p.wer() << " (se " << se
                  << "), mean expansions/info bit " << p.meanExpansionsPerInfoBit()
                  << ", erasures " << p.erasures << '\n';
      }
      if (outPath == "-") {
        cep::emitCsv(points, std::cout);
      } else {
        std::ofstream out(outPath);
        if (!out) throw std::runtime_error("simulate: cannot open " + outPath);
        cep::emitCsv(points, out);
      }
      return 0;
    }
    if (cmdVerify->parsed()) {
      return runVerify(buildSpec(spec));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
