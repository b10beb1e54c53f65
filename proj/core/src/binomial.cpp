#include "cepcode/binomial.hpp"

#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace cep {
namespace {

constexpr std::uint64_t kOverflow = std::numeric_limits<std::uint64_t>::max();

// Row-major lower-triangular Pascal table, built once. Cells that would
// overflow 64 bits hold kOverflow as a sentinel.
const std::vector<std::vector<std::uint64_t>>& pascalTable() {
  static const std::vector<std::vector<std::uint64_t>> table = [] {
    std::vector<std::vector<std::uint64_t>> t(kBinomialMaxN + 1);
    for (int n = 0; n <= kBinomialMaxN; ++n) {
      t[n].resize(n + 1);
      t[n][0] = t[n][n] = 1;
      for (int k = 1; k < n; ++k) {
        std::uint64_t a = t[n - 1][k - 1];
        std::uint64_t b = t[n - 1][k];
        if (a == kOverflow || b == kOverflow || a > kOverflow - b) {
          t[n][k] = kOverflow;
        } else {
          t[n][k] = a + b;
        }
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t binom(int n, int k) {
  if (n < 0 || n > kBinomialMaxN) {
    throw std::invalid_argument("binom: n out of supported range");
  }
  if (k < 0 || k > n) return 0;
  std::uint64_t v = pascalTable()[n][k];
  if (v == kOverflow) throw std::overflow_error("binom: value exceeds 64 bits");
  return v;
}

}  // namespace cep
