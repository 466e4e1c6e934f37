#include "melseq/markov.hpp"

#include <json.hpp>

#include "melseq/rng.hpp"

namespace melseq {

namespace {

nlohmann::json table_json(const Alphabet& alphabet,
                          const std::map<std::vector<int>, std::map<int, int>>& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [ctx, counts] : table) {
    nlohmann::json row;
    nlohmann::json labels = nlohmann::json::array();
    for (int s : ctx) labels.push_back(alphabet.label(s));
    row["context"] = labels;
    nlohmann::json cont = nlohmann::json::object();
    for (const auto& [sym, count] : counts)
      cont[std::to_string(alphabet.label(sym))] = count;
    row["continuations"] = cont;
    rows.push_back(row);
  }
  return rows;
}

int draw_from_counts(const std::map<int, int>& counts, SplitMix64& rng) {
  long long total = 0;
  for (const auto& [sym, c] : counts) total += c;
  double u = rng.next_double() * static_cast<double>(total);
  long long acc = 0;
  int last = counts.begin()->first;
  for (const auto& [sym, c] : counts) {
    acc += c;
    last = sym;
    if (u < static_cast<double>(acc)) return sym;
  }
  return last;
}

}  // namespace

std::string FixedOrderModel::to_json() const {
  nlohmann::json doc;
  doc["order"] = order;
  doc["symbols"] = alphabet.symbols();
  doc["table"] = table_json(alphabet, table);
  return doc.dump(2) + "\n";
}

std::string VariableOrderModel::to_json() const {
  nlohmann::json doc;
  doc["K_max"] = k_max;
  doc["min_continuations"] = min_continuations;
  doc["symbols"] = alphabet.symbols();
  doc["table"] = table_json(alphabet, table);
  return doc.dump(2) + "\n";
}

FixedOrderModel fit_fo(const PitchSequence& corpus, int order) {
  if (order < 1) throw dimension_error("order must be >= 1");
  if (corpus.size() < order + 1)
    throw data_error("corpus too short for order " + std::to_string(order) +
                     ": need N >= " + std::to_string(order + 1));
  FixedOrderModel model;
  model.order = order;
  model.alphabet = corpus.alphabet;
  const auto& s = corpus.data;
  for (int i = 0; i + order < corpus.size(); ++i) {
    std::vector<int> ctx(s.begin() + i, s.begin() + i + order);
    model.table[ctx][s[static_cast<size_t>(i + order)]] += 1;
  }
  for (int i = 0; i + order <= corpus.size(); ++i)
    model.grams.emplace_back(s.begin() + i, s.begin() + i + order);
  return model;
}

PitchSequence generate_fo(const FixedOrderModel& model, int n, uint64_t seed) {
  if (model.table.empty()) throw data_error("empty fixed-order model");
  if (n < 1) throw data_error("output length must be >= 1");
  SplitMix64 rng(seed);
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  std::vector<int> ctx = model.grams[static_cast<size_t>(rng.uniform_int(static_cast<int>(model.grams.size())))];
  for (int v : ctx) {
    out.push_back(v);
    if (static_cast<int>(out.size()) == n) break;
  }
  while (static_cast<int>(out.size()) < n) {
    auto it = model.table.find(ctx);
    if (it == model.table.end()) {  // tail k-gram with no continuation
      ctx = model.grams[static_cast<size_t>(rng.uniform_int(static_cast<int>(model.grams.size())))];
      continue;
    }
    int next = draw_from_counts(it->second, rng);
    out.push_back(next);
    ctx.erase(ctx.begin());
    ctx.push_back(next);
  }
  out.resize(static_cast<size_t>(n));
  return PitchSequence{std::move(out), model.alphabet};
}

VariableOrderModel fit_vo(const PitchSequence& corpus, int k_max,
                          int min_continuations) {
  if (corpus.size() < 2) throw data_error("corpus too short for variable-order fit");
  if (k_max < 1) throw dimension_error("k_max must be >= 1");
  VariableOrderModel model;
  model.k_max = k_max;
  model.min_continuations = min_continuations;
  model.alphabet = corpus.alphabet;
  const auto& s = corpus.data;
  for (int i = 0; i < corpus.size(); ++i) {
    for (int len = 0; len <= std::min(k_max - 1, i); ++len) {
      std::vector<int> ctx(s.begin() + (i - len), s.begin() + i);
      model.table[ctx][s[static_cast<size_t>(i)]] += 1;
    }
  }
  return model;
}

PitchSequence generate_vo(const VariableOrderModel& model, int n, uint64_t seed,
                          std::vector<int>* chosen_orders) {
  if (model.table.empty()) throw data_error("empty variable-order model");
  if (n < 1) throw data_error("output length must be >= 1");
  SplitMix64 rng(seed);
  const auto& unigram = model.table.at(std::vector<int>{});
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  if (chosen_orders) chosen_orders->clear();
  while (static_cast<int>(out.size()) < n) {
    int chosen = 0;
    const std::map<int, int>* dist = &unigram;
    int top = std::min(model.k_max - 1, static_cast<int>(out.size()));
    for (int k = top; k >= 1; --k) {
      std::vector<int> ctx(out.end() - k, out.end());
      auto it = model.table.find(ctx);
      if (it != model.table.end() &&
          static_cast<int>(it->second.size()) > model.min_continuations) {
        chosen = k;
        dist = &it->second;
        break;
      }
    }
    out.push_back(draw_from_counts(*dist, rng));
    if (chosen_orders) chosen_orders->push_back(chosen);
  }
  return PitchSequence{std::move(out), model.alphabet};
}

}  // namespace melseq
