#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cepcode/gram.hpp"

namespace cep {

enum class Heuristic { H1, H2 };

inline constexpr int kMaxTaps = 8;
inline constexpr std::uint64_t kDefaultStackCap = std::uint64_t{1} << 20;

// Received-signal statistics the tree search runs on. Everything here is a
// function of y and the code alone; paths only carry O(P) running sums.
//
// Sub-block codes get one entry per sub-block with a locally padded copy of
// the burst; quasi-static codes collapse to a single block with e = N.
struct DecoderWeights {
  struct Block {
    int e = 0;                  // last usable local position
    Eigen::VectorXcd yt;        // padded local burst, length e + P - 1
    std::vector<Eigen::MatrixXd> w;          // per tree, e x e pair weights
    std::vector<std::vector<double>> alpha;  // per tree, alpha[pos - 1]
    std::vector<double> alphaMax;            // max over trees, [pos - 1]
    std::vector<double> alphaMaxSuffix;      // [s] = sum_{m > s} alphaMax
    std::vector<std::vector<double>> beta;   // per tree, [s] = future pair bound
  };
  std::vector<Block> blocks;
  std::vector<std::vector<Eigen::MatrixXd>> delta;  // [tree][block] = G^-1
  // [tree][k] = sum over blocks after k of (sum alphaMax - beta[0])
  std::vector<std::vector<double>> crossSuffix;
};

DecoderWeights computeWeights(const Eigen::VectorXcd& y, const CodeSpec& spec);

// Running state of the per-path metric recursion (exposed for tests).
struct StepState {
  int level = 0;  // bits set so far
  int curK = 1;   // lowest sub-block of bit `level`
  double g = 0.0;
  std::array<std::complex<double>, kMaxTaps> uCur{}, uNext{};
  std::vector<double> vCur, vNext;  // sized only when h2 is in play
};

void initState(StepState& st, const DecoderWeights& dw, const CodeSpec& spec,
               Heuristic heu);
// Appends bit as b_{level+1}; prevBit is b_{level} (0 at the root).
void extendState(StepState& st, int bit, int prevBit, int tree,
                 const DecoderWeights& dw, const CodeSpec& spec, Heuristic heu);
// Admissible bound on the remaining metric gain; 0 for H1 and at level N.
double heuristicValue(const StepState& st, int tree, const DecoderWeights& dw,
                      const CodeSpec& spec, Heuristic heu);

// Full-word path gain evaluated non-recursively (test cross-check).
double batchMetric(const DecoderWeights& dw, const CodeSpec& spec,
                   std::span<const int> bits, int tree);

// Projection residual ||y||^2 - y^H B (B^T B)^-1 B^T y using the tree's
// target Gram inverse; the exhaustive decoder minimizes this.
double wordMetric(const Eigen::VectorXcd& y, const CodeSpec& spec,
                  const Codeword& word);

struct ExhaustiveResult {
  Codeword word;
  std::uint64_t index = 0;
  double metric = 0.0;
};

// Scans the whole codebook; ties go to the smallest index.
ExhaustiveResult decodeExhaustive(const Eigen::VectorXcd& y, const CodeSpec& spec,
                                  const std::vector<Codeword>& codebook);

struct PriorityResult {
  bool ok = false;  // false: open list exceeded stackCap, treat as erasure
  Codeword word;
  std::uint64_t index = 0;
  std::uint64_t expansions = 0;  // non-terminal pops
  double metric = 0.0;           // final path gain g
};

// Best-first search over the candidate trees of all Gram targets at once.
// Branches that cannot reach a selected codeword ordinal are pruned. When
// trace is given, one CSV row "ordinal,level,tree,f,g,h" per expansion.
PriorityResult decodePriority(const Eigen::VectorXcd& y, const CodeSpec& spec,
                              Heuristic heu,
                              std::uint64_t stackCap = kDefaultStackCap,
                              std::ostream* trace = nullptr);

// Sub-block entry point; requires spec.q. Same search engine.
PriorityResult decodePriorityFast(const Eigen::VectorXcd& y, const CodeSpec& spec,
                                  Heuristic heu,
                                  std::uint64_t stackCap = kDefaultStackCap,
                                  std::ostream* trace = nullptr);

}  // namespace cep
