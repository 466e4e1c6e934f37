#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "melseq/alphabet.hpp"

namespace melseq {

// Fixed-order Markov baseline: every observed (k-gram context -> next
// symbol) transition with multiplicity.
struct FixedOrderModel {
  int order = 1;
  Alphabet alphabet;
  std::map<std::vector<int>, std::map<int, int>> table;
  std::vector<std::vector<int>> grams;  // all k-gram occurrences, corpus order

  std::string to_json() const;
};

FixedOrderModel fit_fo(const PitchSequence& corpus, int order);

// Seeds with a uniformly chosen corpus k-gram occurrence, then draws each
// next symbol from the context's empirical distribution. A dead-end context
// (possible only at the corpus tail) restarts from a fresh k-gram.
PitchSequence generate_fo(const FixedOrderModel& model, int n, uint64_t seed);

// Variable-order baseline: at each step use the largest k < K_max whose
// current suffix has strictly more than min_continuations distinct
// continuations in the corpus; k = 0 falls back to unigram draws.
struct VariableOrderModel {
  int k_max = 10;
  int min_continuations = 3;
  Alphabet alphabet;
  // context length 0..k_max-1 -> continuation counts
  std::map<std::vector<int>, std::map<int, int>> table;

  std::string to_json() const;
};

VariableOrderModel fit_vo(const PitchSequence& corpus, int k_max,
                          int min_continuations = 3);

// chosen_orders, when given, records the context length used at each step.
PitchSequence generate_vo(const VariableOrderModel& model, int n, uint64_t seed,
                          std::vector<int>* chosen_orders = nullptr);

}  // namespace melseq
