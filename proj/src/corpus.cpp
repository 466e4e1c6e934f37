#include "melseq/corpus.hpp"

#include <cctype>
#include <istream>
#include <string>
#include <unordered_map>

namespace melseq {

int note_name_to_midi(const std::string& token, int line, int col) {
  static const int kBase[7] = {9, 11, 0, 2, 4, 5, 7};  // A..G semitones above C
  if (token.empty()) throw parse_error("empty note name", line, col);
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
  if (letter < 'A' || letter > 'G')
    throw parse_error("bad note letter in '" + token + "'", line, col);
  int semitone = kBase[letter - 'A'];
  size_t pos = 1;
  while (pos < token.size() && (token[pos] == '#' || token[pos] == 'b')) {
    semitone += token[pos] == '#' ? 1 : -1;
    ++pos;
  }
  if (pos >= token.size())
    throw parse_error("missing octave in '" + token + "'", line, col);
  int octave = 0;
  try {
    size_t used = 0;
    octave = std::stoi(token.substr(pos), &used);
    if (pos + used != token.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw parse_error("bad octave in '" + token + "'", line, col);
  }
  return (octave + 1) * 12 + semitone;
}

namespace {

struct RawToken {
  std::string text;
  int line;
  int col;
};

std::vector<RawToken> tokenize(std::istream& in) {
  std::vector<RawToken> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // '#' opens a comment only at the start of a token, so sharps inside
    // note names (F#3) survive.
    for (size_t p = 0; p < line.size(); ++p) {
      if (line[p] == '#' &&
          (p == 0 || std::isspace(static_cast<unsigned char>(line[p - 1])))) {
        line.resize(p);
        break;
      }
    }
    size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      tokens.push_back({line.substr(i, j - i), lineno, static_cast<int>(i) + 1});
      i = j;
    }
  }
  return tokens;
}

PitchSequence reindex(const std::vector<int>& raw) {
  std::vector<int> symbols;
  std::unordered_map<int, int> index;
  std::vector<int> data;
  data.reserve(raw.size());
  for (int r : raw) {
    auto [it, fresh] = index.emplace(r, static_cast<int>(symbols.size()));
    if (fresh) symbols.push_back(r);
    data.push_back(it->second);
  }
  return PitchSequence{std::move(data), Alphabet(std::move(symbols))};
}

}  // namespace

PitchSequence load_corpus(std::istream& in, CorpusFormat format) {
  std::vector<int> raw;
  for (const RawToken& tok : tokenize(in)) {
    if (format == CorpusFormat::PlainIntegers) {
      try {
        size_t used = 0;
        int v = std::stoi(tok.text, &used);
        if (used != tok.text.size()) throw std::invalid_argument("");
        raw.push_back(v);
      } catch (const std::exception&) {
        throw parse_error("malformed integer token '" + tok.text + "'", tok.line, tok.col);
      }
    } else {
      raw.push_back(note_name_to_midi(tok.text, tok.line, tok.col));
    }
  }
  if (raw.empty()) throw data_error("empty corpus");
  return reindex(raw);
}

PitchSequence to_intervals(const PitchSequence& seq) {
  if (seq.size() < 2)
    throw data_error("interval encoding needs at least 2 symbols, got " +
                     std::to_string(seq.size()));
  std::vector<int> raw = seq.raw_labels();
  std::vector<int> diffs(raw.size() - 1);
  for (size_t i = 0; i + 1 < raw.size(); ++i) diffs[i] = raw[i + 1] - raw[i];
  return reindex(diffs);
}

std::vector<TrainingSample> windows(const PitchSequence& seq, int k_max) {
  if (k_max < 1) throw dimension_error("k_max must be >= 1");
  const int w = 2 * k_max + 1;
  if (seq.size() < w)
    throw data_error("corpus too short for k_max=" + std::to_string(k_max) +
                     ": need N >= " + std::to_string(w) + ", got " +
                     std::to_string(seq.size()));
  std::vector<TrainingSample> out;
  out.reserve(static_cast<size_t>(seq.size() - 2 * k_max));
  for (int start = 0; start + w <= seq.size(); ++start) {
    TrainingSample s;
    s.k_max = k_max;
    s.window.assign(seq.data.begin() + start, seq.data.begin() + start + w);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace melseq
