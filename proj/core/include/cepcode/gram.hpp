#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cep {

enum class TreeMode { Single, Double };

// Off-diagonal targets of the Gram matrix B^T B a codeword must hit.
//
// Quasi-static codes store one value per correlation lag (c_1..c_{P-1});
// sub-block codes (P = 2) store one adjacent-lag value per sub-block
// (c_1..c_M). Diagonals are implied by (N, P, Q).
struct GramTarget {
  std::vector<int> offdiag;

  bool operator==(const GramTarget&) const = default;
};

// Sub-block geometry of an (N, K) code with design period Q.
// For quasi-static codes blockCount() == 1.
struct BlockLayout {
  int n = 0;
  int p = 2;
  std::optional<int> q;

  int receivedLength() const { return n + p - 1; }  // L
  int blockCount() const;                           // M = ceil(L / Q), or 1
  // Number of adjacent-product terms constrained in sub-block k (1-based).
  int productTerms(int block) const;
  // Number of data bits whose first tap lands in sub-block k.
  int dataBits(int block) const;
  // Sub-block containing bit index (1-based); boundary bits belong to
  // lowestBlockOf and lowestBlockOf + 1.
  int lowestBlockOf(int bitIndex) const;
};

struct CodeSpec {
  int n = 0;
  int k = 0;
  int p = 2;
  std::optional<int> q;
  TreeMode mode = TreeMode::Single;
  std::vector<GramTarget> targets;
  std::vector<std::uint64_t> poolSize;  // candidate sequences per tree, b1 = -1
  std::vector<std::uint64_t> stride;    // selection interval Delta per tree

  int treeCount() const { return static_cast<int>(targets.size()); }
  std::uint64_t totalWords() const { return std::uint64_t{1} << k; }
  std::uint64_t wordsPerTree() const { return totalWords() / treeCount(); }
  BlockLayout layout() const { return BlockLayout{n, p, q}; }
};

struct Codeword {
  std::vector<int> bits;  // +1 / -1, bits[0] is b_1 = -1
  int tree = 0;           // 0-based tree index
};

// Off-diagonal target vectors compatible with the parity constraints, in
// lexicographic order with -1 < 0 < +1.
std::vector<GramTarget> admissibleTargets(int n, int p, std::optional<int> q);

// Resolves trees, targets and selection stride. Throws std::invalid_argument
// ("degenerate rate" when 2^K/Theta < 2, "code too large" when a tree's
// candidate pool is smaller than 2^K/Theta).
CodeSpec makeSpec(int n, int k, int p, std::optional<int> q, TreeMode mode);

// B^T B of the bit sequence, one P x P matrix per sub-block (a single matrix
// when q is absent). Exact integer arithmetic.
std::vector<Eigen::MatrixXi> verifyGram(std::span<const int> bits, int p,
                                        std::optional<int> q = std::nullopt);

// The full target matrices a codeword of tree `target` must satisfy.
std::vector<Eigen::MatrixXi> targetMatrices(int n, int p, std::optional<int> q,
                                            const GramTarget& target);

// Per-block inverse D = G^-1 as dense doubles. When the last sub-block Gram
// is singular (fewer data bits than taps) the zero-padded inverse of its
// trailing invertible submatrix is substituted.
std::vector<Eigen::MatrixXd> targetInverses(int n, int p, std::optional<int> q,
                                            const GramTarget& target);

}  // namespace cep
