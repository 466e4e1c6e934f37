#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "melseq/errors.hpp"

namespace melseq {

// Bijection between raw symbol labels (pitches or intervals, both plain
// integers) and dense indices 0..q-1. Index order is order of first
// occurrence in the source corpus.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<int> symbols) : symbols_(std::move(symbols)) {
    for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
      auto [it, fresh] = index_.emplace(symbols_[i], i);
      if (!fresh) throw data_error("duplicate alphabet label " + std::to_string(symbols_[i]));
    }
    if (symbols_.empty()) throw data_error("empty alphabet");
  }

  int size() const { return static_cast<int>(symbols_.size()); }

  int label(int index) const { return symbols_.at(static_cast<size_t>(index)); }

  int index_of(int lab) const {
    auto it = index_.find(lab);
    if (it == index_.end())
      throw data_error("label " + std::to_string(lab) + " not in alphabet");
    return it->second;
  }

  bool contains(int lab) const { return index_.count(lab) != 0; }

  const std::vector<int>& symbols() const { return symbols_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<int> symbols_;
  std::unordered_map<int, int> index_;
};

// Symbol sequence over an Alphabet; data holds dense indices.
struct PitchSequence {
  std::vector<int> data;
  Alphabet alphabet;

  int size() const { return static_cast<int>(data.size()); }

  std::vector<int> raw_labels() const {
    std::vector<int> out;
    out.reserve(data.size());
    for (int s : data) out.push_back(alphabet.label(s));
    return out;
  }
};

}  // namespace melseq
