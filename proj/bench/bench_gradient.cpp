// Compares the serial reference gradient against the block-parallel one on
// a synthetic instance and reports throughput.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "melseq/corpus.hpp"
#include "melseq/rng.hpp"
#include "melseq/training.hpp"

using namespace melseq;

int main(int argc, char** argv) {
  const int q = argc > 1 ? std::atoi(argv[1]) : 16;
  const int k_max = argc > 2 ? std::atoi(argv[2]) : 10;
  const int n = argc > 3 ? std::atoi(argv[3]) : 20000;
  const int reps = 20;

  SplitMix64 rng(42);
  std::vector<int> data(static_cast<size_t>(n));
  for (int& v : data) v = rng.uniform_int(q);
  std::vector<int> symbols(static_cast<size_t>(q));
  for (int i = 0; i < q; ++i) symbols[static_cast<size_t>(i)] = i;
  PitchSequence seq{std::move(data), Alphabet(symbols)};
  auto samples = windows(seq, k_max);

  ModelParams params = ModelParams::zeros(q, k_max);
  for (double& v : params.h) v = rng.next_double() - 0.5;
  for (auto& m : params.J)
    for (double& v : m) v = 0.2 * (rng.next_double() - 0.5);

  auto time_it = [&](auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
  };

  Gradient gs, gp;
  double t_serial = time_it([&] { gs = pseudo_grad_serial(params, samples); });
  double t_parallel = time_it([&] { gp = pseudo_grad(params, samples); });

  double max_diff = 0.0;
  for (size_t i = 0; i < gs.h.size(); ++i)
    max_diff = std::max(max_diff, std::fabs(gs.h[i] - gp.h[i]));
  for (size_t k = 0; k < gs.J.size(); ++k)
    for (size_t i = 0; i < gs.J[k].size(); ++i)
      max_diff = std::max(max_diff, std::fabs(gs.J[k][i] - gp.J[k][i]));

  std::printf("q=%d K_max=%d M=%zu\n", q, k_max, samples.size());
  std::printf("serial   : %8.2f ms/grad\n", t_serial * 1e3);
  std::printf("parallel : %8.2f ms/grad  (speedup %.2fx)\n", t_parallel * 1e3,
              t_serial / t_parallel);
  std::printf("max |serial - parallel| = %g\n", max_diff);
  return 0;
}
