#include "cepcode/gram.hpp"

#include <algorithm>
#include <stdexcept>

#include "cepcode/counting.hpp"

namespace cep {

int BlockLayout::blockCount() const {
  if (!q) return 1;
  return (receivedLength() + *q - 1) / *q;
}

int BlockLayout::productTerms(int block) const {
  if (!q) return n - 1;
  int start = std::max((block - 1) * *q, 1);
  int end = std::min(block * *q, n) - 1;
  return std::max(end - start + 1, 0);
}

int BlockLayout::dataBits(int block) const {
  if (!q) return n;
  int lo = (block - 1) * *q + 1;
  int hi = std::min(block * *q, n);
  return std::max(hi - lo + 1, 0);
}

int BlockLayout::lowestBlockOf(int bitIndex) const {
  if (!q) return 1;
  return (bitIndex + *q - 1) / *q;
}

std::vector<GramTarget> admissibleTargets(int n, int p, std::optional<int> q) {
  BlockLayout layout{n, p, q};
  // Choice set per off-diagonal position: {0} when the constrained product
  // sum has an even number of terms, {-1,+1} otherwise.
  std::vector<std::vector<int>> choices;
  if (q) {
    for (int k = 1; k <= layout.blockCount(); ++k) {
      if (layout.productTerms(k) % 2 == 0) {
        choices.push_back({0});
      } else {
        choices.push_back({-1, 1});
      }
    }
  } else {
    for (int j = 1; j <= p - 1; ++j) {
      if ((n - j) % 2 == 0) {
        choices.push_back({0});
      } else {
        choices.push_back({-1, 1});
      }
    }
  }
  std::vector<GramTarget> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    GramTarget t;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      t.offdiag.push_back(choices[i][idx[i]]);
    }
    out.push_back(std::move(t));
    // lexicographic increment, last position fastest
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (choices.empty()) return out;
  }
}

namespace {

std::uint64_t rootPool(int n, int p, std::optional<int> q,
                       const GramTarget& target) {
  const int prefix[1] = {-1};
  if (p == 2 && !q) return countSuffixesP2(n, target.offdiag[0], prefix);
  if (p == 2 && q) return countSuffixesBlocks(n, *q, target.offdiag, prefix);
  // general P: A_{N-1}(c | 0,...,0,-1)
  std::vector<int> tail(p - 1, 0);
  tail.back() = -1;
  return countTableGeneral(p, n - 1, target.offdiag, tail);
}

}  // namespace

CodeSpec makeSpec(int n, int k, int p, std::optional<int> q, TreeMode mode) {
  if (n < 2 || k < 1 || k > 62 || p < 2) {
    throw std::invalid_argument("makeSpec: bad (N, K, P)");
  }
  if (q) {
    if (p != 2) throw std::invalid_argument("makeSpec: sub-block codes require P = 2");
    if (*q < p) throw std::invalid_argument("makeSpec: Q must be >= P");
  }
  CodeSpec spec;
  spec.n = n;
  spec.k = k;
  spec.p = p;
  spec.q = q;
  spec.mode = mode;

  const int trees = mode == TreeMode::Single ? 1 : 2;
  if (spec.totalWords() / trees < 2) {
    throw std::invalid_argument("makeSpec: degenerate rate (2^K/Theta < 2)");
  }
  auto targets = admissibleTargets(n, p, q);
  if (static_cast<int>(targets.size()) < trees) {
    throw std::invalid_argument(
        "makeSpec: not enough admissible Gram targets for requested tree mode");
  }
  spec.targets.assign(targets.begin(), targets.begin() + trees);

  const std::uint64_t wordsPerTree = spec.totalWords() / trees;
  for (const auto& t : spec.targets) {
    std::uint64_t pool = rootPool(n, p, q, t);
    if (pool < wordsPerTree) {
      throw std::invalid_argument("makeSpec: code too large for candidate pool");
    }
    spec.poolSize.push_back(pool);
    spec.stride.push_back((pool - 1) / (wordsPerTree - 1));
  }
  return spec;
}

namespace {

// Local bit of sub-block `block` at 1-based local position `pos`
// (bit index (block-1)*Q - P + pos + 1), 0 outside [1, N].
int localBit(std::span<const int> bits, int block, int pos, int p, int q) {
  int g = (block - 1) * q - p + pos + 1;
  if (g < 1 || g > static_cast<int>(bits.size())) return 0;
  return bits[g - 1];
}

}  // namespace

std::vector<Eigen::MatrixXi> verifyGram(std::span<const int> bits, int p,
                                        std::optional<int> q) {
  const int n = static_cast<int>(bits.size());
  for (int b : bits) {
    if (b != 1 && b != -1) throw std::invalid_argument("verifyGram: bits must be +-1");
  }
  std::vector<Eigen::MatrixXi> out;
  if (!q) {
    Eigen::MatrixXi g = Eigen::MatrixXi::Zero(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = i; j < p; ++j) {
        int lag = j - i;
        int s = 0;
        for (int t = 1; t + lag <= n; ++t) s += bits[t - 1] * bits[t + lag - 1];
        g(i, j) = g(j, i) = s;
      }
    }
    out.push_back(std::move(g));
    return out;
  }
  BlockLayout layout{n, p, q};
  for (int k = 1; k <= layout.blockCount(); ++k) {
    // B_k is Q x P with row r, col j = local bit at position P - 1 + r - j + 1.
    Eigen::MatrixXi bk(*q, p);
    for (int r = 0; r < *q; ++r) {
      for (int j = 0; j < p; ++j) {
        bk(r, j) = localBit(bits, k, p + r - j, p, *q);
      }
    }
    out.push_back(bk.transpose() * bk);
  }
  return out;
}

std::vector<Eigen::MatrixXi> targetMatrices(int n, int p, std::optional<int> q,
                                            const GramTarget& target) {
  std::vector<Eigen::MatrixXi> out;
  if (!q) {
    Eigen::MatrixXi g = Eigen::MatrixXi::Zero(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        g(i, j) = (i == j) ? n : target.offdiag[std::abs(i - j) - 1];
      }
    }
    out.push_back(std::move(g));
    return out;
  }
  BlockLayout layout{n, p, q};
  for (int k = 1; k <= layout.blockCount(); ++k) {
    Eigen::MatrixXi g(p, p);
    // diagonal j = number of in-range bits in column j of B_k
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        if (i == j) {
          int lo = (k - 1) * *q + 1 - j;
          int hi = std::min(k * *q - j, n);
          lo = std::max(lo, 1);
          g(i, j) = std::max(hi - lo + 1, 0);
        } else {
          g(i, j) = target.offdiag[k - 1];  // P = 2 only
        }
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Eigen::MatrixXd> targetInverses(int n, int p, std::optional<int> q,
                                            const GramTarget& target) {
  auto mats = targetMatrices(n, p, q, target);
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    Eigen::MatrixXd g = mats[k].cast<double>();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (lu.isInvertible()) {
      out.push_back(lu.inverse());
      continue;
    }
    if (k + 1 != mats.size()) {
      throw std::runtime_error("targetInverses: singular non-terminal Gram target");
    }
    // Last sub-block with fewer data bits than taps: zero rows/columns for
    // the empty leading taps, invert the trailing submatrix.
    int z = 0;
    while (z < p && g(z, z) == 0.0) ++z;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(p, p);
    d.block(z, z, p - z, p - z) = g.block(z, z, p - z, p - z).inverse();
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace cep
