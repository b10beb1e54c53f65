#pragma once

#include <cstdint>

namespace cep {

// binom(n, k) from a memoized Pascal table. Throws std::overflow_error if the
// value does not fit in 64 bits, std::invalid_argument for n < 0 or n too
// large for the table. Returns 0 for k < 0 or k > n; binom(0, 0) == 1.
std::uint64_t binom(int n, int k);

// Largest n the table supports.
inline constexpr int kBinomialMaxN = 80;

}  // namespace cep
