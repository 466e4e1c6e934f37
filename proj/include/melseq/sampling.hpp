#pragma once

#include <cstdint>

#include "melseq/potts.hpp"

namespace melseq {

struct SamplerConfig {
  int n = 1000;           // output length
  int sweeps_factor = 10; // total single-site updates = sweeps_factor * n
  uint64_t seed = 0;
};

// Single-site heat-bath MCMC: start from an i.i.d.-uniform sequence, then
// repeatedly pick a position uniformly and resample its symbol from the
// model conditional (truncated contexts at the borders). Returns the final
// state. Bit-identical output for identical seed and inputs.
PitchSequence generate(const ModelParams& params, const Alphabet& alphabet,
                       const SamplerConfig& config);

}  // namespace melseq
