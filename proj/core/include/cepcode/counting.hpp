#pragma once

#include <cstdint>
#include <span>

#include "cepcode/gram.hpp"

namespace cep {

// Number of length-N completions of `prefix` whose Gram matrix equals the
// quasi-static P=2 target with off-diagonal `offdiag` (0 for N odd, +-1 for
// N even). Closed-form binomial; exact.
std::uint64_t countSuffixesP2(int n, int offdiag, std::span<const int> prefix);

// Sub-block variant (P = 2, period q): completions satisfying every
// per-sub-block Gram constraint, c holding one off-diagonal per sub-block.
std::uint64_t countSuffixesBlocks(int n, int q, std::span<const int> c,
                                  std::span<const int> prefix);

// A_k(qres | tail): number of +-1 sequences d_1..d_k satisfying the P-1 lag
// correlations qres_j = sum_i d_{i-j} d_i, given the P-1 tail bits
// d_{2-P}..d_0. Tail entries may be 0 to denote absent (out-of-range) bits.
// Memoized; safe to call concurrently.
std::uint64_t countTableGeneral(int p, int k, std::span<const int> qres,
                                std::span<const int> tail);

// Suffix count for a prefix on tree `tree` of `spec`, dispatching to the
// closed form matching the spec's geometry.
std::uint64_t countSuffixes(const CodeSpec& spec, int tree,
                            std::span<const int> prefix);

}  // namespace cep
