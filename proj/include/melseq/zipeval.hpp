#pragma once

#include <string>
#include <vector>

#include "melseq/alphabet.hpp"

namespace melseq {

// LZ77-style cross-parse of B against a fixed reference A. Sequences are
// compared on raw labels so corpora with different dense alphabets line up.
struct CrossParse {
  struct Token {
    bool is_match = false;
    int pos = 0;     // match: smallest start position in A
    int len = 0;     // match: length >= 1
    int symbol = 0;  // literal: raw label absent from A
  };
  std::vector<Token> tokens;
  int a_len = 0;
  int b_len = 0;
  // Exact longest common substring of A and B (suffix automaton over A).
  // The longest greedy match is only a lower bound: a token boundary can
  // fall inside the true LCS and split it.
  int lcs_len = 0;
};

// Greedy left-to-right parse: at each position of B take the longest prefix
// of the remainder occurring anywhere in A (smallest source position on
// ties); a symbol absent from A becomes a literal.
CrossParse cross_parse(const std::vector<int>& a, const std::vector<int>& b);
CrossParse cross_parse(const PitchSequence& a, const PitchSequence& b);

// Bits per symbol of B under a fixed cost model: a match of length len
// costs 1 + log2(|A|) + 2*floor(log2 len) + 1; a literal costs 1 + log2(q).
double cross_entropy_bits(const CrossParse& parse, int q);

double acs(const CrossParse& parse);  // mean match length, 0 if no matches
int lcs(const CrossParse& parse);     // exact longest common substring length

struct SimilarityReport {
  double cross_entropy_bits_per_symbol = 0.0;
  double acs = 0.0;
  int lcs = 0;
  int match_count = 0;
  int literal_count = 0;

  std::string to_json() const;
};

// Full pipeline over raw-label sequences; q defaults to the number of
// distinct symbols in A and B combined.
SimilarityReport evaluate_similarity(const std::vector<int>& a,
                                     const std::vector<int>& b, int q = 0);

}  // namespace melseq
