#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "melseq/sampling.hpp"

using namespace melseq;
using test_helpers::identity_alphabet;
using test_helpers::random_params;

TEST_CASE("degenerate alphabet yields a constant sequence") {
  ModelParams p = ModelParams::zeros(1, 1);
  SamplerConfig cfg;
  cfg.n = 50;
  PitchSequence seq = generate(p, identity_alphabet(1), cfg);
  for (int v : seq.data) CHECK(v == 0);
}

TEST_CASE("zero-parameter model has uniform single frequencies") {
  ModelParams p = ModelParams::zeros(4, 2);
  SamplerConfig cfg;
  cfg.n = 100000;
  cfg.sweeps_factor = 2;
  cfg.seed = 9;
  auto f = single_freq(generate(p, identity_alphabet(4), cfg));
  for (double v : f) CHECK(std::fabs(v - 0.25) < 0.01);
}

TEST_CASE("same seed gives identical output, different seed differs") {
  ModelParams p = random_params(3, 2, 4);
  SamplerConfig cfg;
  cfg.n = 200;
  cfg.seed = 1234;
  PitchSequence a = generate(p, identity_alphabet(3), cfg);
  PitchSequence b = generate(p, identity_alphabet(3), cfg);
  CHECK(a.data == b.data);
  cfg.seed = 1235;
  CHECK(generate(p, identity_alphabet(3), cfg).data != a.data);
}

TEST_CASE("sampler output is pinned for a fixed seed") {
  // golden values freeze the RNG stream; any change to the update order or
  // draw scheme shows up here
  ModelParams p = ModelParams::zeros(3, 1);
  SamplerConfig cfg;
  cfg.n = 8;
  cfg.sweeps_factor = 2;
  cfg.seed = 42;
  PitchSequence seq = generate(p, identity_alphabet(3), cfg);
  CHECK(seq.data == std::vector<int>{0, 1, 1, 1, 1, 1, 0, 2});
}

TEST_CASE("final-state distribution approaches the exact Boltzmann law") {
  // reduced-size version of the acceptance check
  const int q = 2, n = 4;
  ModelParams p = random_params(q, 1, 2024);
  std::vector<double> exact = exact_distribution(p, n);
  const int runs = 20000;
  std::vector<double> counts(exact.size(), 0.0);
  for (int r = 0; r < runs; ++r) {
    SamplerConfig cfg;
    cfg.n = n;
    cfg.sweeps_factor = 50;
    cfg.seed = static_cast<uint64_t>(r) + 1;
    PitchSequence s = generate(p, identity_alphabet(q), cfg);
    size_t idx = 0;
    for (int v : s.data) idx = idx * q + static_cast<size_t>(v);
    counts[idx] += 1.0;
  }
  double tv = 0.0;
  for (size_t i = 0; i < exact.size(); ++i)
    tv += std::fabs(counts[i] / runs - exact[i]);
  CHECK(tv / 2.0 < 0.05);
}

TEST_CASE("statistics are stationary beyond the default sweeps factor") {
  ModelParams p = random_params(3, 2, 31, 0.5);
  auto freqs_at = [&](int sweeps, uint64_t seed) {
    SamplerConfig cfg;
    cfg.n = 30000;
    cfg.sweeps_factor = sweeps;
    cfg.seed = seed;
    return single_freq(generate(p, identity_alphabet(3), cfg));
  };
  auto f10 = freqs_at(10, 7);
  auto f20 = freqs_at(20, 8);
  // 3 standard errors of a frequency estimate from n effective draws
  const double se = 3.0 * std::sqrt(0.5 * 0.5 / 30000.0) * 3.0;  // extra margin for autocorrelation
  for (size_t i = 0; i < f10.size(); ++i) CHECK(std::fabs(f10[i] - f20[i]) < se);
}
