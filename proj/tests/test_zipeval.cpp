#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "melseq/zipeval.hpp"

using namespace melseq;

namespace {

// quadratic dynamic-programming longest common substring, the oracle
int lcs_dp(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  int best = 0;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

std::vector<int> reconstruct(const std::vector<int>& a, const CrossParse& parse) {
  std::vector<int> out;
  for (const auto& tok : parse.tokens) {
    if (tok.is_match)
      out.insert(out.end(), a.begin() + tok.pos, a.begin() + tok.pos + tok.len);
    else
      out.push_back(tok.symbol);
  }
  return out;
}

std::vector<int> random_vec(int n, int q, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<int> v(static_cast<size_t>(n));
  for (int& x : v) x = rng.uniform_int(q);
  return v;
}

}  // namespace

TEST_CASE("hand-worked greedy parse") {
  std::vector<int> a = {1, 2, 3, 1, 2};
  std::vector<int> b = {1, 2, 3, 2, 3};
  CrossParse parse = cross_parse(a, b);
  REQUIRE(parse.tokens.size() == 2);
  CHECK(parse.tokens[0].is_match);
  CHECK(parse.tokens[0].pos == 0);
  CHECK(parse.tokens[0].len == 3);
  CHECK(parse.tokens[1].is_match);
  CHECK(parse.tokens[1].pos == 1);
  CHECK(parse.tokens[1].len == 2);
  CHECK(acs(parse) == doctest::Approx(2.5));
  CHECK(lcs(parse) == 3);
  CHECK(lcs_dp(a, b) == 3);
}

TEST_CASE("self-parse is a single match") {
  std::vector<int> a = random_vec(80, 5, 4);
  CrossParse parse = cross_parse(a, a);
  REQUIRE(parse.tokens.size() == 1);
  CHECK(parse.tokens[0].is_match);
  CHECK(parse.tokens[0].pos == 0);
  CHECK(parse.tokens[0].len == 80);
  CHECK(lcs(parse) == 80);
}

TEST_CASE("symbols absent from A become literals") {
  std::vector<int> a = {1, 2, 3};
  std::vector<int> b = {1, 9, 3, 8};
  CrossParse parse = cross_parse(a, b);
  int literals = 0;
  for (const auto& tok : parse.tokens)
    if (!tok.is_match) {
      ++literals;
      CHECK((tok.symbol == 9 || tok.symbol == 8));
    }
  CHECK(literals == 2);
}

TEST_CASE("disjoint alphabets give all literals and zero ACS/LCS") {
  std::vector<int> a = {1, 2, 3};
  std::vector<int> b = {7, 8, 9, 7};
  CrossParse parse = cross_parse(a, b);
  CHECK(acs(parse) == 0.0);
  CHECK(lcs(parse) == 0);
  // literal cost: log2(q) + 1 bits per symbol, exactly
  CHECK(cross_entropy_bits(parse, 8) == doctest::Approx(std::log2(8.0) + 1.0).epsilon(1e-12));
}

TEST_CASE("single-match bit cost follows the fixed formula") {
  std::vector<int> a = random_vec(1024, 30, 1);
  CrossParse parse = cross_parse(a, a);
  double expected = (1.0 + std::log2(1024.0) + 2.0 * std::floor(std::log2(1024.0)) + 1.0) / 1024.0;
  CHECK(cross_entropy_bits(parse, 33) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(cross_entropy_bits(parse, 33) == doctest::Approx(0.0312).epsilon(1e-2));
}

TEST_CASE("corrupting B strictly increases bits per symbol") {
  std::vector<int> a = random_vec(500, 4, 9);
  std::vector<int> b(a.begin(), a.begin() + 300);
  double clean = cross_entropy_bits(cross_parse(a, b), 8);
  std::vector<int> noisy = b;
  for (size_t i = 0; i < noisy.size(); i += 10) noisy[i] = 999;  // absent from A
  double corrupted = cross_entropy_bits(cross_parse(a, noisy), 8);
  CHECK(corrupted > clean);
}

TEST_CASE("greedy LCS equals the DP oracle on random pairs") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    SplitMix64 rng(seed + 500);
    int q = 2 + rng.uniform_int(7);
    std::vector<int> a = random_vec(1 + rng.uniform_int(500), q, seed * 2 + 1);
    std::vector<int> b = random_vec(1 + rng.uniform_int(500), q, seed * 2 + 2);
    CrossParse parse = cross_parse(a, b);
    CHECK(lcs(parse) == lcs_dp(a, b));
    CHECK(reconstruct(a, parse) == b);  // reconstruction invariant
    CHECK(acs(parse) <= lcs(parse));
    CHECK(lcs(parse) <= static_cast<int>(std::min(a.size(), b.size())));
  }
}

TEST_CASE("parse is deterministic with smallest-position tie-break") {
  std::vector<int> a = {5, 1, 2, 5, 1, 2, 9};
  std::vector<int> b = {1, 2};
  CrossParse p1 = cross_parse(a, b);
  REQUIRE(p1.tokens.size() == 1);
  CHECK(p1.tokens[0].pos == 1);  // first of the two occurrences
}

TEST_CASE("evaluate_similarity aggregates counts and defaults q") {
  std::vector<int> a = {1, 2, 3, 1, 2};
  std::vector<int> b = {1, 2, 3, 7};
  SimilarityReport rep = evaluate_similarity(a, b);
  CHECK(rep.match_count == 1);
  CHECK(rep.literal_count == 1);
  CHECK(rep.lcs == 3);
  CHECK(rep.acs == doctest::Approx(3.0));
  // q defaults to |{1,2,3,7}| = 4
  double expected = (1.0 + std::log2(5.0) + 2.0 * std::floor(std::log2(3.0)) + 1.0 +
                     1.0 + std::log2(4.0)) / 4.0;
  CHECK(rep.cross_entropy_bits_per_symbol == doctest::Approx(expected).epsilon(1e-12));
}
