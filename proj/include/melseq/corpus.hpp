#pragma once

#include <iosfwd>
#include <vector>

#include "melseq/alphabet.hpp"

namespace melseq {

enum class CorpusFormat { PlainIntegers, NoteNames };

// Load a whitespace-separated token stream ('#' starts a comment to
// end-of-line) and re-index onto a dense alphabet built from the distinct
// symbols observed, in order of first occurrence. NoteNames accepts
// scientific pitch notation (C4, F#3, Bb-1) mapped to MIDI numbers.
PitchSequence load_corpus(std::istream& in, CorpusFormat format);

// Scientific pitch name -> MIDI number (C4 = 60). Throws parse_error.
int note_name_to_midi(const std::string& token, int line, int col);

// Successive differences of the raw labels, re-indexed onto a fresh dense
// interval alphabet. Output length is N-1.
PitchSequence to_intervals(const PitchSequence& seq);

// Training window of 2*k_max+1 consecutive symbols centered on s_0.
struct TrainingSample {
  std::vector<int> window;
  int k_max = 0;

  int center() const { return window[static_cast<size_t>(k_max)]; }
  int left(int l) const { return window[static_cast<size_t>(k_max - l)]; }
  int right(int l) const { return window[static_cast<size_t>(k_max + l)]; }
};

// All N - 2*k_max contiguous windows of the corpus.
std::vector<TrainingSample> windows(const PitchSequence& seq, int k_max);

}  // namespace melseq
