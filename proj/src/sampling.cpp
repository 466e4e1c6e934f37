#include "melseq/sampling.hpp"

#include "melseq/errors.hpp"
#include "melseq/rng.hpp"

namespace melseq {

PitchSequence generate(const ModelParams& params, const Alphabet& alphabet,
                       const SamplerConfig& config) {
  if (alphabet.size() != params.q)
    throw dimension_error("alphabet size does not match model q");
  if (!params.finite()) throw numeric_error("non-finite model parameter");
  if (config.n < 1 || config.sweeps_factor < 1)
    throw data_error("sampler needs n >= 1 and sweeps_factor >= 1");

  const int n = config.n;
  const int q = params.q;
  SplitMix64 rng(config.seed);

  std::vector<int> s(static_cast<size_t>(n));
  for (int& v : s) v = rng.uniform_int(q);

  std::vector<int> left, right;
  left.reserve(static_cast<size_t>(params.k_max));
  right.reserve(static_cast<size_t>(params.k_max));
  const long long updates = static_cast<long long>(config.sweeps_factor) * n;
  for (long long t = 0; t < updates; ++t) {
    const int i = rng.uniform_int(n);
    left.clear();
    right.clear();
    for (int l = 1; l <= params.k_max && i - l >= 0; ++l) left.push_back(s[static_cast<size_t>(i - l)]);
    for (int l = 1; l <= params.k_max && i + l < n; ++l) right.push_back(s[static_cast<size_t>(i + l)]);
    std::vector<double> p = conditional(params, left, right);
    s[static_cast<size_t>(i)] = rng.categorical(p);
  }
  return PitchSequence{std::move(s), alphabet};
}

}  // namespace melseq
