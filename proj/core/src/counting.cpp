#include "cepcode/counting.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "cepcode/binomial.hpp"

namespace cep {
namespace {

void validatePrefix(int n, std::span<const int> prefix) {
  const int len = static_cast<int>(prefix.size());
  if (len < 1 || len > n) {
    throw std::invalid_argument("count: prefix length must be in 1..N");
  }
  for (int b : prefix) {
    if (b != 1 && b != -1) throw std::invalid_argument("count: prefix bits must be +-1");
  }
}

std::uint64_t mulChecked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("count: product exceeds 64 bits");
  }
  return r;
}

}  // namespace

std::uint64_t countSuffixesP2(int n, int offdiag, std::span<const int> prefix) {
  validatePrefix(n, prefix);
  if (n % 2 == 1 ? offdiag != 0 : (offdiag != 1 && offdiag != -1)) {
    throw std::invalid_argument("countSuffixesP2: target off-diagonal has wrong parity");
  }
  const int len = static_cast<int>(prefix.size());
  long long m = 0;
  for (int t = 1; t < len; ++t) m += prefix[t - 1] * prefix[t];
  const int rem = n - len;
  if (std::abs(offdiag - m) > rem) return 0;
  const long long num = rem + offdiag - m;
  if (num % 2 != 0) return 0;  // unreachable for valid parity targets
  return binom(rem, static_cast<int>(num / 2));
}

std::uint64_t countSuffixesBlocks(int n, int q, std::span<const int> c,
                                  std::span<const int> prefix) {
  if (q < 2) throw std::invalid_argument("countSuffixesBlocks: Q must be >= P = 2");
  validatePrefix(n, prefix);
  BlockLayout layout{n, 2, q};
  const int blocks = layout.blockCount();
  if (static_cast<int>(c.size()) != blocks) {
    throw std::invalid_argument("countSuffixesBlocks: need one off-diagonal per sub-block");
  }
  for (int k = 1; k <= blocks; ++k) {
    if (std::abs(c[k - 1]) > 1 || (layout.productTerms(k) + c[k - 1]) % 2 != 0) {
      throw std::invalid_argument("countSuffixesBlocks: off-diagonal violates sub-block parity");
    }
  }
  const int len = static_cast<int>(prefix.size());
  const int tau = len / q + 1;
  // sub-blocks fully covered by the prefix must already meet their target
  for (int k = 1; k < tau; ++k) {
    long long s = 0;
    for (int t = std::max((k - 1) * q, 1); t <= std::min(k * q, n) - 1; ++t) {
      s += prefix[t - 1] * prefix[t];
    }
    if (s != c[k - 1]) return 0;
  }
  // running product sum restarts at each sub-block boundary
  long long m = 0;
  for (int t = std::max((tau - 1) * q, 1); t < len; ++t) {
    m += prefix[t - 1] * prefix[t];
  }
  const int rem = std::min(tau * q, n) - len;  // products left in sub-block tau
  if (std::abs(c[tau - 1] - m) > rem) return 0;
  const long long num = rem + c[tau - 1] - m;
  if (num % 2 != 0) return 0;
  std::uint64_t total = binom(rem, static_cast<int>(num / 2));
  for (int k = tau + 1; k <= blocks; ++k) {
    const int terms = layout.productTerms(k);
    total = mulChecked(total, binom(terms, (terms + c[k - 1]) / 2));
  }
  return total;
}

namespace {

using Key = std::vector<int>;  // (p, k, qres..., tail...)

std::uint64_t countGeneralImpl(int p, int k, std::vector<int> qres,
                               std::vector<int> tail,
                               std::map<Key, std::uint64_t>& memo) {
  for (int v : qres) {
    if (std::abs(v) > k) return 0;
  }
  if (k == 0) return 1;  // all residuals zero by the check above

  // tail sign symmetry: negating every tail bit leaves the count unchanged
  for (int v : tail) {
    if (v == 0) continue;
    if (v > 0) {
      for (int& t : tail) t = -t;
    }
    break;
  }

  Key key;
  key.reserve(2 + qres.size() + tail.size());
  key.push_back(p);
  key.push_back(k);
  key.insert(key.end(), qres.begin(), qres.end());
  key.insert(key.end(), tail.begin(), tail.end());
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::uint64_t total = 0;
  for (int d1 : {-1, 1}) {
    std::vector<int> nq(qres);
    for (int j = 1; j <= p - 1; ++j) {
      nq[j - 1] -= tail[p - 1 - j] * d1;  // d_{1-j} * d_1
    }
    std::vector<int> nt(tail.begin() + 1, tail.end());
    nt.push_back(d1);
    total += countGeneralImpl(p, k - 1, std::move(nq), std::move(nt), memo);
  }
  memo.emplace(std::move(key), total);
  return total;
}

std::map<Key, std::uint64_t>& generalMemo() {
  static std::map<Key, std::uint64_t> memo;
  return memo;
}
std::mutex& generalMemoMutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::uint64_t countTableGeneral(int p, int k, std::span<const int> qres,
                                std::span<const int> tail) {
  if (p < 2 || k < 0) throw std::invalid_argument("countTableGeneral: need P > 1, k >= 0");
  if (static_cast<int>(qres.size()) != p - 1 ||
      static_cast<int>(tail.size()) != p - 1) {
    throw std::invalid_argument("countTableGeneral: q and tail must have P - 1 entries");
  }
  for (int v : qres) {
    if (std::abs(v) > k) throw std::invalid_argument("countTableGeneral: |q_j| > k");
  }
  for (int v : tail) {
    if (v < -1 || v > 1) throw std::invalid_argument("countTableGeneral: tail bits must be -1, 0 or +1");
  }
  std::lock_guard<std::mutex> lock(generalMemoMutex());
  return countGeneralImpl(p, k, {qres.begin(), qres.end()},
                          {tail.begin(), tail.end()}, generalMemo());
}

std::uint64_t countSuffixes(const CodeSpec& spec, int tree,
                            std::span<const int> prefix) {
  if (tree < 0 || tree >= spec.treeCount()) {
    throw std::invalid_argument("countSuffixes: tree index out of range");
  }
  const auto& c = spec.targets[tree].offdiag;
  if (spec.p == 2 && !spec.q) return countSuffixesP2(spec.n, c[0], prefix);
  if (spec.p == 2 && spec.q) return countSuffixesBlocks(spec.n, *spec.q, c, prefix);

  // general P via the lag-correlation table
  const int len = static_cast<int>(prefix.size());
  validatePrefix(spec.n, prefix);
  const int rem = spec.n - len;
  std::vector<int> qres(spec.p - 1), tail(spec.p - 1);
  for (int j = 1; j <= spec.p - 1; ++j) {
    long long m = 0;
    for (int t = 1; t + j <= len; ++t) m += prefix[t - 1] * prefix[t + j - 1];
    long long r = c[j - 1] - m;
    if (std::abs(r) > rem) return 0;
    qres[j - 1] = static_cast<int>(r);
  }
  for (int i = 0; i < spec.p - 1; ++i) {
    int g = len - spec.p + 2 + i;  // global index of tail bit d_{i-(P-2)}
    tail[i] = (g >= 1) ? prefix[g - 1] : 0;
  }
  return countTableGeneral(spec.p, rem, qres, tail);
}

}  // namespace cep
