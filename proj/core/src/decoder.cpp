#include "cepcode/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "cepcode/counting.hpp"

namespace cep {
namespace {

// (sub-block, local position) pairs of bit `ell`, 1-based. Bits within P - 1
// of a sub-block boundary appear in two blocks.
int positionsOf(const CodeSpec& spec, int ell, int pairs[2][2]) {
  if (!spec.q) {
    pairs[0][0] = 1;
    pairs[0][1] = ell;
    return 1;
  }
  const int q = *spec.q;
  const int p = spec.p;
  const int m = spec.layout().blockCount();
  const int k1 = (ell + q - 1) / q;
  int cnt = 0;
  pairs[cnt][0] = k1;
  pairs[cnt][1] = ell - (k1 - 1) * q + p - 1;
  ++cnt;
  if (k1 + 1 <= m) {
    const int pos2 = ell - k1 * q + p - 1;
    if (pos2 >= 1) {
      pairs[cnt][0] = k1 + 1;
      pairs[cnt][1] = pos2;
      ++cnt;
    }
  }
  return cnt;
}

}  // namespace

DecoderWeights computeWeights(const Eigen::VectorXcd& y, const CodeSpec& spec) {
  const int p = spec.p;
  const int n = spec.n;
  const int l = n + p - 1;
  if (y.size() != l) throw std::invalid_argument("computeWeights: burst length must be N + P - 1");
  if (p > kMaxTaps) throw std::invalid_argument("computeWeights: too many taps");
  const int trees = spec.treeCount();

  DecoderWeights dw;
  dw.delta.resize(trees);
  for (int t = 0; t < trees; ++t) {
    dw.delta[t] = targetInverses(n, p, spec.q, spec.targets[t]);
  }

  const BlockLayout layout = spec.layout();
  const int m = layout.blockCount();
  dw.blocks.resize(m);
  for (int k = 1; k <= m; ++k) {
    auto& blk = dw.blocks[k - 1];
    if (!spec.q) {
      blk.e = n;
      blk.yt = y;
    } else {
      const int q = *spec.q;
      blk.e = std::min(k * q, n) - (k - 1) * q + p - 1;
      blk.yt = Eigen::VectorXcd::Zero(blk.e + p - 1);
      for (int t = p; t <= std::min(blk.e + p - 1, p - 1 + q); ++t) {
        const int g = (k - 1) * q + t - p + 1;  // global sample index
        if (g <= l) blk.yt(t - 1) = y(g - 1);
      }
    }
    const int e = blk.e;
    blk.w.resize(trees);
    blk.alpha.resize(trees);
    blk.beta.resize(trees);
    blk.alphaMax.assign(e, -std::numeric_limits<double>::infinity());
    for (int t = 0; t < trees; ++t) {
      const Eigen::MatrixXd& d = dw.delta[t][spec.q ? k - 1 : 0];
      Eigen::MatrixXd w(e, e);
      for (int m1 = 1; m1 <= e; ++m1) {
        for (int n1 = 1; n1 <= m1; ++n1) {
          double s = 0.0;
          for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
              s += d(i, j) * (blk.yt(m1 + i - 1) * std::conj(blk.yt(n1 + j - 1))).real();
            }
          }
          w(m1 - 1, n1 - 1) = s;
          w(n1 - 1, m1 - 1) = s;
        }
      }
      auto& alpha = blk.alpha[t];
      alpha.assign(e, 0.0);
      for (int pos = 1; pos <= e; ++pos) {
        double a = 0.5 * std::abs(w(pos - 1, pos - 1));
        for (int n1 = 1; n1 < pos; ++n1) a += std::abs(w(pos - 1, n1 - 1));
        alpha[pos - 1] = a;
        blk.alphaMax[pos - 1] = std::max(blk.alphaMax[pos - 1], a);
      }
      auto& beta = blk.beta[t];
      beta.assign(e + 1, 0.0);
      for (int s = e; s >= 1; --s) {
        double row = 0.5 * std::abs(w(s - 1, s - 1));
        for (int n1 = s + 1; n1 <= e; ++n1) row += std::abs(w(s - 1, n1 - 1));
        beta[s - 1] = beta[s] + row;
      }
      blk.w[t] = std::move(w);
    }
    blk.alphaMaxSuffix.assign(e + 1, 0.0);
    for (int s = e; s >= 1; --s) {
      blk.alphaMaxSuffix[s - 1] = blk.alphaMaxSuffix[s] + blk.alphaMax[s - 1];
    }
  }

  dw.crossSuffix.assign(trees, std::vector<double>(m + 1, 0.0));
  for (int t = 0; t < trees; ++t) {
    for (int k = m - 1; k >= 0; --k) {
      const auto& blk = dw.blocks[k];
      dw.crossSuffix[t][k] = dw.crossSuffix[t][k + 1] +
                             (blk.alphaMaxSuffix[0] - blk.beta[t][0]);
    }
  }
  return dw;
}

void initState(StepState& st, const DecoderWeights& dw, const CodeSpec& spec,
               Heuristic heu) {
  (void)spec;
  st = StepState{};
  if (heu == Heuristic::H2) {
    st.vCur.assign(dw.blocks[0].e, 0.0);
    if (dw.blocks.size() > 1) st.vNext.assign(dw.blocks[1].e, 0.0);
  }
}

void extendState(StepState& st, int bit, int prevBit, int tree,
                 const DecoderWeights& dw, const CodeSpec& spec, Heuristic heu) {
  const int ell = st.level + 1;
  const int p = spec.p;
  const int newK = spec.layout().lowestBlockOf(ell);
  if (newK != st.curK) {
    st.uCur = st.uNext;
    st.uNext.fill({});
    if (heu == Heuristic::H2) {
      st.vCur = std::move(st.vNext);
      if (newK < static_cast<int>(dw.blocks.size())) {
        st.vNext.assign(dw.blocks[newK].e, 0.0);
      } else {
        st.vNext.clear();
      }
    }
    st.curK = newK;
  }
  int pairs[2][2];
  const int np = positionsOf(spec, ell, pairs);
  for (int a = 0; a < np; ++a) {
    const int k = pairs[a][0];
    const int pos = pairs[a][1];
    const auto& blk = dw.blocks[k - 1];
    auto& u = (k == st.curK) ? st.uCur : st.uNext;
    const int pb = (pos == 1) ? 0 : prevBit;
    for (int j = 0; j < p; ++j) {
      std::complex<double> du = 0.5 * static_cast<double>(bit) * std::conj(blk.yt(pos + j - 1));
      if (pb != 0) du += 0.5 * static_cast<double>(pb) * std::conj(blk.yt(pos + j - 2));
      u[j] += du;
    }
    const auto& d = dw.delta[tree][spec.q ? k - 1 : 0];
    double core = 0.0;
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        core += d(i, j) * (blk.yt(pos + i - 1) * u[j]).real();
      }
    }
    st.g += blk.alphaMax[pos - 1] - bit * core;
    if (heu == Heuristic::H2) {
      auto& v = (k == st.curK) ? st.vCur : st.vNext;
      const auto& w = blk.w[tree];
      for (int mm = 0; mm < blk.e; ++mm) v[mm] += bit * w(pos - 1, mm);
    }
  }
  st.level = ell;
}

double heuristicValue(const StepState& st, int tree, const DecoderWeights& dw,
                      const CodeSpec& spec, Heuristic heu) {
  if (heu == Heuristic::H1 || st.level >= spec.n || st.level < 1) return 0.0;
  int pairs[2][2];
  const int np = positionsOf(spec, st.level, pairs);
  double h = 0.0;
  int lastK = 0;
  for (int a = 0; a < np; ++a) {
    const int k = pairs[a][0];
    const int pos = pairs[a][1];
    const auto& blk = dw.blocks[k - 1];
    const auto& v = (k == st.curK) ? st.vCur : st.vNext;
    double vsum = 0.0;
    for (int mm = pos; mm < blk.e; ++mm) vsum += std::abs(v[mm]);
    h += blk.alphaMaxSuffix[pos] - vsum - blk.beta[tree][pos];
    lastK = k;
  }
  h += dw.crossSuffix[tree][lastK];
  return h;
}

double batchMetric(const DecoderWeights& dw, const CodeSpec& spec,
                   std::span<const int> bits, int tree) {
  const int p = spec.p;
  double g = 0.0;
  for (std::size_t kb = 0; kb < dw.blocks.size(); ++kb) {
    const auto& blk = dw.blocks[kb];
    const auto& w = blk.w[tree];
    auto bitAt = [&](int pos) -> int {
      const int ell = spec.q ? static_cast<int>(kb) * *spec.q + pos - p + 1 : pos;
      return (ell >= 1 && ell <= spec.n) ? bits[ell - 1] : 0;
    };
    for (int m = 1; m <= blk.e; ++m) {
      const int am = bitAt(m);
      if (am == 0) continue;
      g += blk.alphaMax[m - 1];
      double s = 0.0;
      for (int nn = 1; nn <= blk.e; ++nn) {
        const int an = bitAt(nn);
        if (an != 0) s += w(m - 1, nn - 1) * am * an;
      }
      g -= 0.5 * s;
    }
  }
  return g;
}

namespace {

double metricImpl(const Eigen::VectorXcd& y, const CodeSpec& spec,
                  std::span<const int> bits,
                  const std::vector<Eigen::MatrixXd>& dlist) {
  const int p = spec.p;
  const int n = spec.n;
  const int l = n + p - 1;
  double metric = y.squaredNorm();
  auto bitAt = [&](int t) -> double {
    return (t >= 1 && t <= n) ? static_cast<double>(bits[t - 1]) : 0.0;
  };
  if (!spec.q) {
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(p);
    for (int j = 0; j < p; ++j) {
      for (int t = 1; t <= n; ++t) z(j) += bitAt(t) * y(t + j - 1);
    }
    metric -= (z.adjoint() * dlist[0].cast<std::complex<double>>() * z)(0).real();
    return metric;
  }
  const int q = *spec.q;
  const int m = spec.layout().blockCount();
  for (int k = 1; k <= m; ++k) {
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(p);
    for (int r = 1; r <= q; ++r) {
      const int sample = (k - 1) * q + r;
      if (sample > l) break;
      for (int j = 0; j < p; ++j) z(j) += bitAt(sample - j) * y(sample - 1);
    }
    metric -= (z.adjoint() * dlist[k - 1].cast<std::complex<double>>() * z)(0).real();
  }
  return metric;
}

}  // namespace

double wordMetric(const Eigen::VectorXcd& y, const CodeSpec& spec,
                  const Codeword& word) {
  auto dlist = targetInverses(spec.n, spec.p, spec.q, spec.targets[word.tree]);
  return metricImpl(y, spec, word.bits, dlist);
}

ExhaustiveResult decodeExhaustive(const Eigen::VectorXcd& y, const CodeSpec& spec,
                                  const std::vector<Codeword>& codebook) {
  std::vector<std::vector<Eigen::MatrixXd>> dlists;
  for (int t = 0; t < spec.treeCount(); ++t) {
    dlists.push_back(targetInverses(spec.n, spec.p, spec.q, spec.targets[t]));
  }
  ExhaustiveResult best;
  best.metric = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < codebook.size(); ++i) {
    const double m = metricImpl(y, spec, codebook[i].bits, dlists[codebook[i].tree]);
    if (m < best.metric) {
      best.metric = m;
      best.index = i;
      best.word = codebook[i];
    }
  }
  return best;
}

namespace {

struct Path {
  StepState st;
  std::uint64_t mask = 0;  // bit ell at position ell - 1, set bit = +1
  std::uint64_t lo = 0, hi = 0;
  int tree = 0;
  double f = 0.0;
};

struct HeapItem {
  double f;
  int level;
  std::uint64_t seq;
  std::uint32_t idx;
};

struct HeapCmp {
  // priority: lowest f, then deepest level, then first pushed
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.level != b.level) return a.level < b.level;
    return a.seq > b.seq;
  }
};

bool intervalSelectable(std::uint64_t lo, std::uint64_t hi, std::uint64_t delta,
                        std::uint64_t maxSel) {
  if (lo > hi) return false;
  hi = std::min(hi, maxSel);
  if (lo > hi) return false;
  return hi - hi % delta >= lo;
}

PriorityResult runSearch(const Eigen::VectorXcd& y, const CodeSpec& spec,
                         Heuristic heu, std::uint64_t stackCap,
                         std::ostream* trace) {
  if (spec.n > 63) throw std::invalid_argument("decodePriority: N must be <= 63");
  const DecoderWeights dw = computeWeights(y, spec);
  std::vector<Path> arena;
  std::priority_queue<HeapItem, std::vector<HeapItem>, HeapCmp> open;
  std::uint64_t seq = 0;
  PriorityResult res;

  auto push = [&](Path&& pth) -> bool {
    if (open.size() >= stackCap) return false;
    open.push(HeapItem{pth.f, pth.st.level, seq++,
                       static_cast<std::uint32_t>(arena.size())});
    arena.push_back(std::move(pth));
    return true;
  };

  for (int t = 0; t < spec.treeCount(); ++t) {
    Path root;
    root.tree = t;
    initState(root.st, dw, spec, heu);
    extendState(root.st, -1, 0, t, dw, spec, heu);
    root.lo = 0;
    root.hi = spec.poolSize[t] - 1;
    root.f = root.st.g + heuristicValue(root.st, t, dw, spec, heu);
    if (!push(std::move(root))) return res;
  }
  if (trace) *trace << "ordinal,level,tree,f,g,h\n";

  std::vector<int> prefix;
  prefix.reserve(spec.n);
  while (!open.empty()) {
    const HeapItem top = open.top();
    open.pop();
    Path parent = arena[top.idx];  // children may reallocate the arena

    if (parent.st.level == spec.n) {
      res.ok = true;
      res.word.bits.resize(spec.n);
      for (int i = 0; i < spec.n; ++i) {
        res.word.bits[i] = (parent.mask >> i & 1) ? 1 : -1;
      }
      res.word.tree = parent.tree;
      res.metric = parent.st.g;
      res.index = parent.lo / spec.stride[parent.tree] +
                  static_cast<std::uint64_t>(parent.tree) * spec.wordsPerTree();
      return res;
    }

    if (trace) {
      *trace << res.expansions << ',' << parent.st.level << ',' << parent.tree + 1
             << ',' << parent.f << ',' << parent.st.g << ','
             << parent.f - parent.st.g << '\n';
    }
    ++res.expansions;

    prefix.resize(parent.st.level + 1);
    for (int i = 0; i < parent.st.level; ++i) {
      prefix[i] = (parent.mask >> i & 1) ? 1 : -1;
    }
    prefix.back() = -1;
    const std::uint64_t gamma = countSuffixes(spec, parent.tree, prefix);
    const int prevBit = (parent.mask >> (parent.st.level - 1) & 1) ? 1 : -1;
    const std::uint64_t delta = spec.stride[parent.tree];
    const std::uint64_t maxSel = (spec.wordsPerTree() - 1) * delta;

    if (gamma > 0 &&
        intervalSelectable(parent.lo, parent.lo + gamma - 1, delta, maxSel)) {
      Path c = parent;
      extendState(c.st, -1, prevBit, c.tree, dw, spec, heu);
      c.hi = c.lo + gamma - 1;
      c.f = c.st.g + heuristicValue(c.st, c.tree, dw, spec, heu);
      if (!push(std::move(c))) return res;
    }
    if (parent.lo + gamma <= parent.hi &&
        intervalSelectable(parent.lo + gamma, parent.hi, delta, maxSel)) {
      Path c = std::move(parent);
      c.mask |= std::uint64_t{1} << c.st.level;
      extendState(c.st, 1, prevBit, c.tree, dw, spec, heu);
      c.lo += gamma;
      c.f = c.st.g + heuristicValue(c.st, c.tree, dw, spec, heu);
      if (!push(std::move(c))) return res;
    }
  }
  return res;  // open list exhausted; report as erasure
}

}  // namespace

PriorityResult decodePriority(const Eigen::VectorXcd& y, const CodeSpec& spec,
                              Heuristic heu, std::uint64_t stackCap,
                              std::ostream* trace) {
  return runSearch(y, spec, heu, stackCap, trace);
}

PriorityResult decodePriorityFast(const Eigen::VectorXcd& y, const CodeSpec& spec,
                                  Heuristic heu, std::uint64_t stackCap,
                                  std::ostream* trace) {
  if (!spec.q) {
    throw std::invalid_argument("decodePriorityFast: spec has no sub-block period");
  }
  return runSearch(y, spec, heu, stackCap, trace);
}

}  // namespace cep
