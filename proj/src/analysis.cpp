#include "melseq/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "melseq/errors.hpp"
#include "melseq/potts.hpp"

namespace melseq {

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<size_t>(static_cast<uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

using PatternCounts = std::unordered_map<std::vector<int>, long long, VecHash>;
using PatternSet = std::unordered_set<std::vector<int>, VecHash>;

PatternCounts count_patterns(const std::vector<int>& seq, int len) {
  PatternCounts counts;
  for (int i = 0; i + len <= static_cast<int>(seq.size()); ++i)
    counts[std::vector<int>(seq.begin() + i, seq.begin() + i + len)] += 1;
  return counts;
}

}  // namespace

std::vector<RankRow> pattern_freq_rank(const std::vector<int>& corpus,
                                       const std::vector<int>& generated,
                                       int max_len) {
  if (corpus.empty() || generated.empty())
    throw data_error("pattern_freq_rank needs nonempty sequences");
  std::vector<RankRow> rows;
  for (int len = 1; len <= max_len; ++len) {
    if (len > static_cast<int>(corpus.size()) || len > static_cast<int>(generated.size()))
      break;
    PatternCounts cc = count_patterns(corpus, len);
    PatternCounts gc = count_patterns(generated, len);
    // common patterns, ordered for a deterministic tie-break
    std::vector<std::pair<std::vector<int>, std::pair<long long, long long>>> common;
    for (const auto& [pat, c] : cc) {
      auto it = gc.find(pat);
      if (it != gc.end()) common.push_back({pat, {c, it->second}});
    }
    if (common.empty()) continue;
    long long c_total = 0, g_total = 0;
    for (const auto& e : common) {
      c_total += e.second.first;
      g_total += e.second.second;
    }
    std::sort(common.begin(), common.end(), [](const auto& a, const auto& b) {
      if (a.second.first != b.second.first) return a.second.first > b.second.first;
      return a.first < b.first;
    });
    for (size_t r = 0; r < common.size(); ++r) {
      RankRow row;
      row.len = len;
      row.rank = static_cast<int>(r) + 1;
      row.corpus_freq = static_cast<double>(common[r].second.first) / c_total;
      row.generated_freq = static_cast<double>(common[r].second.second) / g_total;
      row.pattern = common[r].first;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

InnovationCurve hamming_counts(const std::vector<int>& corpus,
                               const std::vector<int>& generated, int l_min,
                               int l_max) {
  if (corpus.empty() || generated.empty())
    throw data_error("hamming_counts needs nonempty sequences");
  if (l_min < 1 || l_max < l_min) throw data_error("bad length range");
  std::set<int> symbol_set(corpus.begin(), corpus.end());
  std::vector<int> symbols(symbol_set.begin(), symbol_set.end());

  InnovationCurve curve;
  int limit = std::min<int>(l_max, std::min(corpus.size(), generated.size()));
  curve.truncated = limit < l_max;
  for (int len = l_min; len <= limit; ++len) {
    PatternSet cp;
    for (int i = 0; i + len <= static_cast<int>(corpus.size()); ++i)
      cp.insert(std::vector<int>(corpus.begin() + i, corpus.begin() + i + len));
    PatternSet gp;
    for (int i = 0; i + len <= static_cast<int>(generated.size()); ++i)
      gp.insert(std::vector<int>(generated.begin() + i, generated.begin() + i + len));

    PatternSet enum_d1;
    for (const auto& pat : cp) {
      std::vector<int> cand = pat;
      for (int pos = 0; pos < len; ++pos) {
        const int orig = cand[static_cast<size_t>(pos)];
        for (int sub : symbols) {
          if (sub == orig) continue;
          cand[static_cast<size_t>(pos)] = sub;
          if (!cp.count(cand)) enum_d1.insert(cand);
        }
        cand[static_cast<size_t>(pos)] = orig;
      }
    }

    long long d0 = 0, d1 = 0;
    for (const auto& pat : gp) {
      if (cp.count(pat))
        ++d0;
      else if (enum_d1.count(pat))
        ++d1;
    }
    curve.lengths.push_back(len);
    curve.n_corpus.push_back(static_cast<long long>(cp.size()));
    curve.n_d0.push_back(d0);
    curve.n_d1.push_back(d1);
    curve.n_enum_d1.push_back(static_cast<long long>(enum_d1.size()));
  }
  return curve;
}

std::vector<ScatterPoint> scatter_data(const PitchSequence& corpus,
                                       const PitchSequence& generated, int k_max) {
  if (corpus.size() < 2 || generated.size() < 2)
    throw data_error("scatter_data needs sequences of length >= 2");
  // shared index space over the union of raw labels
  std::vector<int> corpus_raw = corpus.raw_labels();
  std::vector<int> generated_raw = generated.raw_labels();
  std::set<int> labels(corpus_raw.begin(), corpus_raw.end());
  labels.insert(generated_raw.begin(), generated_raw.end());
  Alphabet joint(std::vector<int>(labels.begin(), labels.end()));
  auto remap = [&joint](const std::vector<int>& raw) {
    std::vector<int> data;
    data.reserve(raw.size());
    for (int r : raw) data.push_back(joint.index_of(r));
    return PitchSequence{std::move(data), joint};
  };
  PitchSequence c = remap(corpus_raw);
  PitchSequence g = remap(generated_raw);
  const int q = joint.size();

  std::vector<ScatterPoint> points;
  int top = std::min(k_max, std::min(c.size(), g.size()) - 1);
  for (int k = 1; k <= top; ++k) {
    std::vector<double> fc = pair_freq(c, k);
    std::vector<double> fg = pair_freq(g, k);
    for (int r = 0; r < q; ++r)
      for (int col = 0; col < q; ++col) {
        double a = fc[static_cast<size_t>(r) * q + col];
        double b = fg[static_cast<size_t>(r) * q + col];
        if (a == 0.0 && b == 0.0) continue;
        points.push_back({k, joint.label(r), joint.label(col), a, b});
      }
  }
  return points;
}

}  // namespace melseq
