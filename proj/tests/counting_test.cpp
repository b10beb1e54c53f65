#include <doctest.h>

#include "cepcode/binomial.hpp"
#include "cepcode/counting.hpp"
#include "oracles.hpp"

using namespace cep;

TEST_CASE("binomial table") {
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 2) == 10);
  CHECK(binom(21, 10) == 352716);
  CHECK(binom(4, 5) == 0);
  CHECK(binom(4, -1) == 0);
}

TEST_CASE("adjacent-lag suffix count, frozen values") {
  const std::vector<int> root{-1};
  CHECK(countSuffixesP2(5, 0, root) == 6);
  // full tree: counts of the two children sum to the parent count
  const std::vector<int> mm{-1, -1};
  const std::vector<int> mp{-1, 1};
  CHECK(countSuffixesP2(5, 0, mm) + countSuffixesP2(5, 0, mp) == 6);
}

TEST_CASE("adjacent-lag count equals enumeration, quasi-static") {
  for (int n = 2; n <= 8; ++n) {
    std::vector<int> cs = (n % 2 == 1) ? std::vector<int>{0}
                                       : std::vector<int>{-1, 1};
    for (int c : cs) {
      for (int len = 1; len <= n; ++len) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << len); ++m) {
          std::vector<int> prefix(len);
          for (int i = 0; i < len; ++i) prefix[i] = (m >> i & 1) ? 1 : -1;
          CHECK(countSuffixesP2(n, c, prefix) ==
                test::bruteCountSuffixes(n, 2, std::nullopt, {c}, prefix));
        }
      }
    }
  }
}

TEST_CASE("per-sub-block count equals enumeration") {
  const int n = 8, q = 5;
  for (auto& target : admissibleTargets(n, 2, q)) {
    for (int len = 1; len <= n; ++len) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << len); ++m) {
        std::vector<int> prefix(len);
        for (int i = 0; i < len; ++i) prefix[i] = (m >> i & 1) ? 1 : -1;
        CHECK(countSuffixesBlocks(n, q, target.offdiag, prefix) ==
              test::bruteCountSuffixes(n, 2, q, target.offdiag, prefix));
      }
    }
  }
}

TEST_CASE("three-tap count table matches published cells") {
  const int tailMM[2] = {-1, -1};
  const int tailMP[2] = {-1, 1};
  {
    const int q[2] = {-1, -1};
    CHECK(countTableGeneral(3, 5, q, tailMM) == 4);
  }
  {
    const int q[2] = {1, -1};
    CHECK(countTableGeneral(3, 5, q, tailMM) == 3);
  }
  {
    const int q[2] = {0, -4};
    CHECK(countTableGeneral(3, 4, q, tailMM) == 1);
  }
  {
    const int q[2] = {-1, -3};
    CHECK(countTableGeneral(3, 5, q, tailMP) == 3);
  }
}

TEST_CASE("three-tap count table equals enumeration") {
  for (int k = 1; k <= 7; ++k) {
    for (int tail0 : {-1, 0, 1}) {
      for (int tail1 : {-1, 1}) {
        const std::vector<int> tail{tail0, tail1};
        for (int q1 = -k; q1 <= k; ++q1) {
          for (int q2 = -k; q2 <= k; ++q2) {
            const int qArr[2] = {q1, q2};
            const int tArr[2] = {tail0, tail1};
            CHECK(countTableGeneral(3, k, qArr, tArr) ==
                  test::bruteCountGeneral(3, k, {q1, q2}, tail));
          }
        }
      }
    }
  }
}

TEST_CASE("general-P prefix dispatch equals enumeration") {
  const int n = 7, p = 3;
  for (auto& target : admissibleTargets(n, p, std::nullopt)) {
    CodeSpec spec;
    spec.n = n;
    spec.p = p;
    spec.targets.push_back(target);
    for (int len = 1; len <= n; ++len) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << len); ++m) {
        std::vector<int> prefix(len);
        for (int i = 0; i < len; ++i) prefix[i] = (m >> i & 1) ? 1 : -1;
        CHECK(countSuffixes(spec, 0, prefix) ==
              test::bruteCountSuffixes(n, p, std::nullopt, target.offdiag, prefix));
      }
    }
  }
}

TEST_CASE("count argument validation") {
  const std::vector<int> root{-1};
  CHECK_THROWS_AS(countSuffixesP2(5, 1, root), std::invalid_argument);   // odd N wants 0
  CHECK_THROWS_AS(countSuffixesP2(6, 0, root), std::invalid_argument);   // even N wants +-1
  CHECK_THROWS_AS(countSuffixesP2(5, 0, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(countSuffixesP2(5, 0, std::vector<int>{-1, 2}), std::invalid_argument);
  const int tail[2] = {-1, -1};
  const int badQ[2] = {4, 0};
  CHECK_THROWS_AS(countTableGeneral(3, 3, badQ, tail), std::invalid_argument);
}
