#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cepcode/gram.hpp"

namespace cep {

// Deterministic index -> codeword map: walks the candidate tree picking the
// branch that keeps the running candidate ordinal rho = index * Delta inside
// the branch's ordinal interval.
Codeword encode(const CodeSpec& spec, std::uint64_t index);

// Exact inverse of encode. Throws std::invalid_argument("not a codeword")
// for bit patterns outside the selected codebook.
std::uint64_t codewordIndex(const CodeSpec& spec, const Codeword& word);

// Candidate-pool ordinal of the codeword within its tree (index * Delta).
std::uint64_t codewordOrdinal(const CodeSpec& spec, const Codeword& word);

// All 2^K codewords in index order.
std::vector<Codeword> enumerateCodebook(const CodeSpec& spec);

// One codeword per line: index, tree id and bits as +/- characters,
// tab-separated.
void exportCodebook(const CodeSpec& spec, std::ostream& os);

// Lag-correlation count table as CSV: rows q1 = -k..k, columns q2 = -k..k
// (P = 3 layout). Header row/column carry the q values.
void writeCountTableCsv(std::ostream& os, int k, int tail0, int tail1);

}  // namespace cep
