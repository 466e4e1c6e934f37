#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "melseq/markov.hpp"

using namespace melseq;
using test_helpers::make_seq;

TEST_CASE("fit_fo counts observed transitions") {
  FixedOrderModel m = fit_fo(make_seq({0, 1, 0, 1, 0}, 2), 1);
  CHECK(m.table.at({0}).at(1) == 2);
  CHECK(m.table.at({1}).at(0) == 2);
  CHECK(m.table.at({0}).size() == 1);  // P(1|0) = 1.0
  CHECK(m.table.at({1}).size() == 1);  // P(0|1) = 1.0
}

TEST_CASE("fit_fo self-loop and long-context cases") {
  FixedOrderModel a = fit_fo(make_seq({0, 0, 0}, 1), 1);
  CHECK(a.table.at({0}).at(0) == 2);

  FixedOrderModel b = fit_fo(make_seq({0, 1, 2}, 3), 2);
  CHECK(b.table.size() == 1);
  CHECK(b.table.at({0, 1}).at(2) == 1);
}

TEST_CASE("fit_fo total transition count is N - k") {
  PitchSequence seq = test_helpers::random_seq(200, 3, 6);
  for (int k : {1, 2, 3}) {
    FixedOrderModel m = fit_fo(seq, k);
    long long total = 0;
    for (const auto& [ctx, cont] : m.table)
      for (const auto& [sym, c] : cont) total += c;
    CHECK(total == 200 - k);
  }
}

TEST_CASE("fit_fo rejects short corpora") {
  CHECK_THROWS_AS(fit_fo(make_seq({0, 1}, 2), 2), data_error);
}

TEST_CASE("generate_fo reproduces a deterministic chain") {
  FixedOrderModel m = fit_fo(make_seq({0, 1, 0, 1, 0, 1, 0}, 2), 1);
  for (uint64_t seed : {1ULL, 9ULL, 77ULL}) {
    PitchSequence out = generate_fo(m, 40, seed);
    for (size_t i = 1; i < out.data.size(); ++i)
      CHECK(out.data[i] != out.data[i - 1]);  // strict alternation
  }
}

TEST_CASE("generate_fo is seed-deterministic") {
  FixedOrderModel m = fit_fo(test_helpers::random_seq(300, 4, 8), 2);
  CHECK(generate_fo(m, 100, 5).data == generate_fo(m, 100, 5).data);
  CHECK(generate_fo(m, 100, 5).data != generate_fo(m, 100, 6).data);
}

TEST_CASE("generate_fo bigram conditionals match the corpus") {
  PitchSequence corpus = test_helpers::load_fixture_corpus();
  FixedOrderModel m = fit_fo(corpus, 1);
  PitchSequence out = generate_fo(m, 1000000, 3);
  const int q = corpus.alphabet.size();
  auto cf = pair_freq(corpus, 1);
  auto cs = single_freq(corpus);
  auto gf = pair_freq(out, 1);
  auto gs = single_freq(out);
  int checked = 0;
  for (int a = 0; a < q; ++a) {
    if (cs[static_cast<size_t>(a)] < 0.01) continue;
    for (int b = 0; b < q; ++b) {
      double pc = cf[static_cast<size_t>(a) * q + b] / cs[static_cast<size_t>(a)];
      double pg = gf[static_cast<size_t>(a) * q + b] / gs[static_cast<size_t>(a)];
      double n_ctx = gs[static_cast<size_t>(a)] * 1000000.0;
      double se = std::sqrt(std::max(pc * (1 - pc), 1e-6) / n_ctx);
      CHECK(std::fabs(pg - pc) < 3.0 * se + 1e-3);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("fit_vo threshold is strict (more than min_continuations)") {
  // context {0} has exactly 3 distinct continuations: rejected at the
  // default threshold, accepted at min_continuations=2
  PitchSequence seq = make_seq({0, 1, 0, 2, 0, 3, 0, 1}, 4);
  VariableOrderModel m = fit_vo(seq, 5);
  CHECK(m.table.at({0}).size() == 3);
  std::vector<int> orders;
  PitchSequence out = generate_vo(m, 200, 1, &orders);
  for (int k : orders) CHECK(k == 0);  // no context passes ">3"

  VariableOrderModel loose = fit_vo(seq, 5, 2);
  generate_vo(loose, 200, 1, &orders);
  bool used_context = false;
  for (int k : orders) used_context |= k > 0;
  CHECK(used_context);
}

TEST_CASE("all-unique contexts fall back to unigram draws") {
  PitchSequence seq = make_seq({0, 1, 2, 3, 4}, 5);
  VariableOrderModel m = fit_vo(seq, 4);
  std::vector<int> orders;
  PitchSequence out = generate_vo(m, 100, 2, &orders);
  for (int k : orders) CHECK(k == 0);
  for (int v : out.data) CHECK((v >= 0 && v < 5));
}

TEST_CASE("vo per-step invariant: chosen context passes the threshold") {
  PitchSequence corpus = test_helpers::load_fixture_corpus();
  VariableOrderModel m = fit_vo(corpus, 8);
  std::vector<int> orders;
  PitchSequence out = generate_vo(m, 2000, 11, &orders);
  REQUIRE(orders.size() == out.data.size());
  for (size_t i = 0; i < orders.size(); ++i) {
    int k = orders[i];
    if (k == 0) continue;
    std::vector<int> ctx(out.data.begin() + static_cast<long>(i) - k,
                         out.data.begin() + static_cast<long>(i));
    CHECK(static_cast<int>(m.table.at(ctx).size()) > m.min_continuations);
  }
}

TEST_CASE("vo generation handles a deterministic chain") {
  VariableOrderModel m = fit_vo(make_seq({0, 1, 0, 1, 0, 1}, 2), 5);
  PitchSequence out = generate_vo(m, 50, 3);
  for (int v : out.data) CHECK((v == 0 || v == 1));
}

TEST_CASE("vo generation is seed-deterministic") {
  VariableOrderModel m = fit_vo(test_helpers::random_seq(400, 3, 21), 6);
  CHECK(generate_vo(m, 150, 4).data == generate_vo(m, 150, 4).data);
}

TEST_CASE("constructed corpus selects k=2 when every 2-gram is diverse") {
  // every 2-gram context is followed by 4+ distinct symbols, but 3-grams
  // are too sparse: the generator should settle on k=2 given K_max=4
  SplitMix64 rng(99);
  std::vector<int> data;
  for (int i = 0; i < 4000; ++i) data.push_back(rng.uniform_int(5));
  PitchSequence seq = make_seq(std::move(data), 5);
  VariableOrderModel m = fit_vo(seq, 3);
  std::vector<int> orders;
  generate_vo(m, 500, 6, &orders);
  int k2 = 0;
  for (size_t i = 2; i < orders.size(); ++i)
    if (orders[i] == 2) ++k2;
  CHECK(k2 > 400);  // dominant choice
}
