#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "melseq/corpus.hpp"
#include "melseq/potts.hpp"
#include "melseq/rng.hpp"
#include "melseq/training.hpp"

namespace test_helpers {

inline melseq::Alphabet identity_alphabet(int q) {
  std::vector<int> symbols(static_cast<size_t>(q));
  for (int i = 0; i < q; ++i) symbols[static_cast<size_t>(i)] = i;
  return melseq::Alphabet(symbols);
}

inline melseq::PitchSequence make_seq(std::vector<int> data, int q) {
  return melseq::PitchSequence{std::move(data), identity_alphabet(q)};
}

inline melseq::PitchSequence random_seq(int n, int q, uint64_t seed) {
  melseq::SplitMix64 rng(seed);
  std::vector<int> data(static_cast<size_t>(n));
  for (int& v : data) v = rng.uniform_int(q);
  return make_seq(std::move(data), q);
}

inline melseq::ModelParams random_params(int q, int k_max, uint64_t seed,
                                         double scale = 1.0) {
  melseq::SplitMix64 rng(seed);
  melseq::ModelParams p = melseq::ModelParams::zeros(q, k_max);
  for (double& v : p.h) v = scale * (2.0 * rng.next_double() - 1.0);
  for (auto& m : p.J)
    for (double& v : m) v = scale * (2.0 * rng.next_double() - 1.0);
  return p;
}

inline melseq::PitchSequence load_fixture_corpus() {
  std::ifstream in(std::string(FIXTURE_DIR) + "/structured_corpus.txt");
  return melseq::load_corpus(in, melseq::CorpusFormat::PlainIntegers);
}

// Central finite differences of the smooth pseudo-likelihood part.
inline melseq::Gradient fd_gradient(const melseq::ModelParams& params,
                                    const std::vector<melseq::TrainingSample>& samples,
                                    double step = 1e-5) {
  melseq::ModelParams p = params;
  melseq::Gradient g = melseq::Gradient::zeros(params.q, params.k_max);
  auto central = [&](double& coord) {
    const double orig = coord;
    coord = orig + step;
    double fp = melseq::pseudo_loss_serial(p, samples, 0.0);
    coord = orig - step;
    double fm = melseq::pseudo_loss_serial(p, samples, 0.0);
    coord = orig;
    return (fp - fm) / (2.0 * step);
  };
  for (size_t i = 0; i < p.h.size(); ++i) g.h[i] = central(p.h[i]);
  for (size_t k = 0; k < p.J.size(); ++k)
    for (size_t i = 0; i < p.J[k].size(); ++i) g.J[k][i] = central(p.J[k][i]);
  return g;
}

inline double grad_rel_error(const melseq::Gradient& a, const melseq::Gradient& b) {
  double num = 0.0, den = 0.0;
  auto acc = [&](double x, double y) {
    num += (x - y) * (x - y);
    den += y * y;
  };
  for (size_t i = 0; i < a.h.size(); ++i) acc(a.h[i], b.h[i]);
  for (size_t k = 0; k < a.J.size(); ++k)
    for (size_t i = 0; i < a.J[k].size(); ++i) acc(a.J[k][i], b.J[k][i]);
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
}

}  // namespace test_helpers
