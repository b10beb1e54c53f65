#include "cepcode/codebook.hpp"

#include <ostream>
#include <stdexcept>

#include "cepcode/counting.hpp"

namespace cep {

Codeword encode(const CodeSpec& spec, std::uint64_t index) {
  if (index >= spec.totalWords()) {
    throw std::invalid_argument("encode: index out of range");
  }
  int tree = 0;
  std::uint64_t i = index;
  if (spec.treeCount() == 2 && index >= spec.wordsPerTree()) {
    tree = 1;
    i -= spec.wordsPerTree();
  }
  const std::uint64_t rho = i * spec.stride[tree];
  std::uint64_t lo = 0;

  Codeword word;
  word.tree = tree;
  word.bits.reserve(spec.n);
  word.bits.push_back(-1);
  for (int level = 2; level <= spec.n; ++level) {
    word.bits.push_back(-1);
    const std::uint64_t gamma = countSuffixes(spec, tree, word.bits);
    if (rho < lo + gamma) {
      // keep -1
    } else {
      word.bits.back() = 1;
      lo += gamma;
    }
  }
  return word;
}

std::uint64_t codewordOrdinal(const CodeSpec& spec, const Codeword& word) {
  if (static_cast<int>(word.bits.size()) != spec.n || word.bits[0] != -1 ||
      word.tree < 0 || word.tree >= spec.treeCount()) {
    throw std::invalid_argument("not a codeword");
  }
  std::uint64_t lo = 0;
  std::uint64_t hi = spec.poolSize[word.tree] - 1;
  std::vector<int> prefix;
  prefix.reserve(spec.n);
  prefix.push_back(-1);
  for (int level = 2; level <= spec.n; ++level) {
    prefix.push_back(-1);
    const std::uint64_t gamma = countSuffixes(spec, word.tree, prefix);
    if (word.bits[level - 1] == -1) {
      if (gamma == 0) throw std::invalid_argument("not a codeword");
      hi = lo + gamma - 1;
    } else {
      prefix.back() = 1;
      lo += gamma;
      if (lo > hi) throw std::invalid_argument("not a codeword");
    }
  }
  if (lo != hi) throw std::invalid_argument("not a codeword");
  return lo;
}

namespace {

bool sameGram(const std::vector<Eigen::MatrixXi>& a,
              const std::vector<Eigen::MatrixXi>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols()) return false;
    if ((a[i] - b[i]).cwiseAbs().maxCoeff() != 0) return false;
  }
  return true;
}

}  // namespace

std::uint64_t codewordIndex(const CodeSpec& spec, const Codeword& word) {
  // Locate the tree by exact Gram comparison, then invert the encode walk.
  auto gram = verifyGram(word.bits, spec.p, spec.q);
  int tree = -1;
  for (int t = 0; t < spec.treeCount(); ++t) {
    if (sameGram(gram, targetMatrices(spec.n, spec.p, spec.q, spec.targets[t]))) {
      tree = t;
      break;
    }
  }
  if (tree < 0) throw std::invalid_argument("not a codeword");
  Codeword w = word;
  w.tree = tree;
  const std::uint64_t rho = codewordOrdinal(spec, w);
  if (rho % spec.stride[tree] != 0) throw std::invalid_argument("not a codeword");
  const std::uint64_t i = rho / spec.stride[tree];
  if (i >= spec.wordsPerTree()) throw std::invalid_argument("not a codeword");
  return i + static_cast<std::uint64_t>(tree) * spec.wordsPerTree();
}

std::vector<Codeword> enumerateCodebook(const CodeSpec& spec) {
  std::vector<Codeword> book;
  book.reserve(spec.totalWords());
  for (std::uint64_t i = 0; i < spec.totalWords(); ++i) {
    book.push_back(encode(spec, i));
  }
  return book;
}

void exportCodebook(const CodeSpec& spec, std::ostream& os) {
  for (std::uint64_t i = 0; i < spec.totalWords(); ++i) {
    Codeword w = encode(spec, i);
    os << i << '\t' << w.tree + 1 << '\t';
    for (int b : w.bits) os << (b > 0 ? '+' : '-');
    os << '\n';
  }
}

void writeCountTableCsv(std::ostream& os, int k, int tail0, int tail1) {
  const int tail[2] = {tail0, tail1};
  os << "q1\\q2";
  for (int q2 = -k; q2 <= k; ++q2) os << ',' << q2;
  os << '\n';
  for (int q1 = -k; q1 <= k; ++q1) {
    os << q1;
    for (int q2 = -k; q2 <= k; ++q2) {
      const int qres[2] = {q1, q2};
      os << ',' << countTableGeneral(3, k, qres, tail);
    }
    os << '\n';
  }
}

}  // namespace cep
