#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "cepcode/codebook.hpp"
#include "cepcode/counting.hpp"
#include "oracles.hpp"

using namespace cep;

namespace {

void checkCodebookValid(const CodeSpec& spec) {
  const auto book = enumerateCodebook(spec);
  REQUIRE(book.size() == spec.totalWords());
  std::set<std::vector<int>> seen;
  for (std::uint64_t i = 0; i < book.size(); ++i) {
    const auto& w = book[i];
    CHECK(w.bits.front() == -1);
    CHECK(seen.insert(w.bits).second);
    const auto gram = verifyGram(w.bits, spec.p, spec.q);
    const auto want = targetMatrices(spec.n, spec.p, spec.q, spec.targets[w.tree]);
    REQUIRE(gram.size() == want.size());
    for (std::size_t b = 0; b < gram.size(); ++b) {
      CHECK((gram[b] - want[b]).cwiseAbs().maxCoeff() == 0);
    }
    CHECK(codewordIndex(spec, w) == i);
  }
}

}  // namespace

TEST_CASE("spec resolution") {
  const auto spec = makeSpec(10, 5, 2, std::nullopt, TreeMode::Double);
  CHECK(spec.treeCount() == 2);
  CHECK(spec.targets[0].offdiag == std::vector<int>{-1});
  CHECK(spec.targets[1].offdiag == std::vector<int>{1});
  CHECK(spec.wordsPerTree() == 16);
  // odd N admits only the zero off-diagonal, hence a single tree
  CHECK_THROWS_AS(makeSpec(9, 4, 2, std::nullopt, TreeMode::Double),
                  std::invalid_argument);
  CHECK_THROWS_AS(makeSpec(10, 1, 2, std::nullopt, TreeMode::Double),
                  std::invalid_argument);  // degenerate rate
  CHECK_THROWS_AS(makeSpec(6, 5, 2, std::nullopt, TreeMode::Single),
                  std::invalid_argument);  // pool too small
}

TEST_CASE("stride spreads indices over the candidate pool") {
  const auto spec = makeSpec(10, 5, 2, std::nullopt, TreeMode::Double);
  for (int t = 0; t < 2; ++t) {
    CHECK(spec.stride[t] == (spec.poolSize[t] - 1) / (spec.wordsPerTree() - 1));
    CHECK(spec.stride[t] >= 1);
  }
}

TEST_CASE("encode frozen value") {
  const auto spec = makeSpec(5, 2, 2, std::nullopt, TreeMode::Single);
  const auto w = encode(spec, 0);
  CHECK(w.tree == 0);
  CHECK(w.bits == std::vector<int>{-1, -1, -1, 1, -1});
}

TEST_CASE("codebooks are distinct, Gram-exact, roundtrip-recoverable") {
  checkCodebookValid(makeSpec(10, 5, 2, std::nullopt, TreeMode::Double));
  checkCodebookValid(makeSpec(12, 6, 2, std::nullopt, TreeMode::Double));
  checkCodebookValid(makeSpec(9, 4, 2, std::nullopt, TreeMode::Single));
  checkCodebookValid(makeSpec(12, 6, 2, 7, TreeMode::Double));
  checkCodebookValid(makeSpec(11, 4, 3, std::nullopt, TreeMode::Double));
}

TEST_CASE("index ordinal is the encode walk inverse") {
  const auto spec = makeSpec(10, 5, 2, std::nullopt, TreeMode::Double);
  for (std::uint64_t i = 0; i < spec.totalWords(); ++i) {
    const auto w = encode(spec, i);
    const std::uint64_t inTree = i % spec.wordsPerTree();
    CHECK(codewordOrdinal(spec, w) == inTree * spec.stride[w.tree]);
  }
}

TEST_CASE("non-codewords are rejected") {
  const auto spec = makeSpec(10, 5, 2, std::nullopt, TreeMode::Double);
  Codeword w = encode(spec, 3);
  w.bits[4] = -w.bits[4];  // breaks the Gram constraint
  CHECK_THROWS_WITH_AS(static_cast<void>(codewordIndex(spec, w)), "not a codeword",
                       std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(encode(spec, spec.totalWords())),
                  std::invalid_argument);
}

TEST_CASE("sub-block boundary bits are parity-forced") {
  // adjacent products inside block k sum to c_k, so the first bit of each
  // sub-block is determined by the last bit of the previous one
  const auto spec = makeSpec(12, 6, 2, 7, TreeMode::Double);
  const int q = 7;
  for (const auto& w : enumerateCodebook(spec)) {
    const auto& c = spec.targets[w.tree].offdiag;
    const int qm1 = q - 1;  // products in block 1
    const int flips1 = (qm1 - c[0]) / 2;
    CHECK(w.bits[q - 1] == w.bits[0] * (flips1 % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("codebook export format") {
  const auto spec = makeSpec(5, 2, 2, std::nullopt, TreeMode::Single);
  std::ostringstream os;
  exportCodebook(spec, os);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "0\t1\t---+-");
  int rows = 1;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("count table CSV layout") {
  std::ostringstream os;
  writeCountTableCsv(os, 1, -1, -1);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "q1\\q2,-1,0,1");
  REQUIRE(std::getline(is, line));
  CHECK(line == "-1,1,0,0");  // A_1((-1,-1)|-1,-1) = 1
}
