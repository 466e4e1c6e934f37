#pragma once

#include <vector>

#include "melseq/alphabet.hpp"

namespace melseq {

// One row of the frequency-rank comparison: corpus patterns of length len
// also present in the generated sequence, ranked by corpus frequency
// (descending, lexicographic tie-break). Both frequency columns are
// renormalized over the common-pattern set of that length.
struct RankRow {
  int len = 0;
  int rank = 0;
  double corpus_freq = 0.0;
  double generated_freq = 0.0;
  std::vector<int> pattern;  // raw labels
};

std::vector<RankRow> pattern_freq_rank(const std::vector<int>& corpus,
                                       const std::vector<int>& generated,
                                       int max_len = 6);

// Distinct-pattern counts per length: corpus patterns, generated patterns
// found verbatim in the corpus (d=0), generated patterns at Hamming
// distance exactly 1 from some corpus pattern (d=1), and the full
// enumeration of d=1 neighbors of corpus patterns (positions x (q-1)
// substitutions, deduplicated, corpus patterns excluded).
struct InnovationCurve {
  std::vector<int> lengths;
  std::vector<long long> n_corpus;
  std::vector<long long> n_d0;
  std::vector<long long> n_d1;
  std::vector<long long> n_enum_d1;
  bool truncated = false;  // requested lengths exceeded a sequence length
};

InnovationCurve hamming_counts(const std::vector<int>& corpus,
                               const std::vector<int>& generated, int l_min,
                               int l_max);

// One point per (distance k, symbol pair) over the union alphabet of the
// two sequences; pairs absent from both are dropped.
struct ScatterPoint {
  int k = 0;
  int sigma = 0;        // raw label, left symbol
  int sigma_prime = 0;  // raw label, right symbol
  double corpus_freq = 0.0;
  double model_freq = 0.0;
};

std::vector<ScatterPoint> scatter_data(const PitchSequence& corpus,
                                       const PitchSequence& generated, int k_max);

}  // namespace melseq
