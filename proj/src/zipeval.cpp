#include "melseq/zipeval.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <unordered_map>
#include <unordered_set>

#include "melseq/errors.hpp"

namespace melseq {

namespace {

// Suffix automaton over A; scanning B through it yields the exact longest
// common substring. The greedy parse fragments can each be shorter than the
// true LCS when a token boundary falls inside it, so the parse's maximum
// match length is only a lower bound.
int longest_common_substring(const std::vector<int>& a, const std::vector<int>& b) {
  struct State {
    int len = 0, link = -1;
    std::unordered_map<int, int> next;
  };
  std::vector<State> st;
  st.reserve(2 * a.size() + 2);
  st.emplace_back();  // root
  int last = 0;
  for (int c : a) {
    int cur = static_cast<int>(st.size());
    st.emplace_back();
    st[static_cast<size_t>(cur)].len = st[static_cast<size_t>(last)].len + 1;
    int p = last;
    while (p != -1 && !st[static_cast<size_t>(p)].next.count(c)) {
      st[static_cast<size_t>(p)].next[c] = cur;
      p = st[static_cast<size_t>(p)].link;
    }
    if (p == -1) {
      st[static_cast<size_t>(cur)].link = 0;
    } else {
      int q = st[static_cast<size_t>(p)].next[c];
      if (st[static_cast<size_t>(p)].len + 1 == st[static_cast<size_t>(q)].len) {
        st[static_cast<size_t>(cur)].link = q;
      } else {
        int clone = static_cast<int>(st.size());
        st.push_back(st[static_cast<size_t>(q)]);
        st[static_cast<size_t>(clone)].len = st[static_cast<size_t>(p)].len + 1;
        st[static_cast<size_t>(q)].link = clone;
        st[static_cast<size_t>(cur)].link = clone;
        while (p != -1 && st[static_cast<size_t>(p)].next[c] == q) {
          st[static_cast<size_t>(p)].next[c] = clone;
          p = st[static_cast<size_t>(p)].link;
        }
      }
    }
    last = cur;
  }
  int v = 0, len = 0, best = 0;
  for (int c : b) {
    while (v != 0 && !st[static_cast<size_t>(v)].next.count(c)) {
      v = st[static_cast<size_t>(v)].link;
      len = st[static_cast<size_t>(v)].len;
    }
    auto it = st[static_cast<size_t>(v)].next.find(c);
    if (it != st[static_cast<size_t>(v)].next.end()) {
      v = it->second;
      ++len;
    } else {
      v = 0;
      len = 0;
    }
    best = std::max(best, len);
  }
  return best;
}

}  // namespace

CrossParse cross_parse(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) throw data_error("cross_parse needs nonempty sequences");
  // start positions in A per symbol, ascending
  std::unordered_map<int, std::vector<int>> starts;
  for (int j = 0; j < static_cast<int>(a.size()); ++j) starts[a[static_cast<size_t>(j)]].push_back(j);

  CrossParse parse;
  parse.a_len = static_cast<int>(a.size());
  parse.b_len = static_cast<int>(b.size());
  int i = 0;
  const int nb = static_cast<int>(b.size());
  const int na = static_cast<int>(a.size());
  while (i < nb) {
    auto it = starts.find(b[static_cast<size_t>(i)]);
    if (it == starts.end()) {
      parse.tokens.push_back({false, 0, 0, b[static_cast<size_t>(i)]});
      ++i;
      continue;
    }
    int best_len = 0;
    int best_pos = 0;
    for (int j : it->second) {
      int len = 0;
      while (j + len < na && i + len < nb &&
             a[static_cast<size_t>(j + len)] == b[static_cast<size_t>(i + len)])
        ++len;
      if (len > best_len) {  // strict: keeps the smallest position on ties
        best_len = len;
        best_pos = j;
      }
    }
    parse.tokens.push_back({true, best_pos, best_len, 0});
    i += best_len;
  }
  parse.lcs_len = longest_common_substring(a, b);
  return parse;
}

CrossParse cross_parse(const PitchSequence& a, const PitchSequence& b) {
  return cross_parse(a.raw_labels(), b.raw_labels());
}

double cross_entropy_bits(const CrossParse& parse, int q) {
  if (q < 1) throw dimension_error("alphabet size must be >= 1");
  double bits = 0.0;
  for (const auto& tok : parse.tokens) {
    if (tok.is_match) {
      bits += 1.0 + std::log2(static_cast<double>(parse.a_len)) +
              2.0 * std::floor(std::log2(static_cast<double>(tok.len))) + 1.0;
    } else {
      bits += 1.0 + std::log2(static_cast<double>(q));
    }
  }
  return bits / parse.b_len;
}

double acs(const CrossParse& parse) {
  long long total = 0;
  int matches = 0;
  for (const auto& tok : parse.tokens)
    if (tok.is_match) {
      total += tok.len;
      ++matches;
    }
  return matches == 0 ? 0.0 : static_cast<double>(total) / matches;
}

int lcs(const CrossParse& parse) { return parse.lcs_len; }

std::string SimilarityReport::to_json() const {
  nlohmann::json doc;
  doc["cross_entropy_bits_per_symbol"] = cross_entropy_bits_per_symbol;
  doc["acs"] = acs;
  doc["lcs"] = lcs;
  doc["match_count"] = match_count;
  doc["literal_count"] = literal_count;
  return doc.dump(2) + "\n";
}

SimilarityReport evaluate_similarity(const std::vector<int>& a,
                                     const std::vector<int>& b, int q) {
  if (q == 0) {
    std::unordered_set<int> symbols(a.begin(), a.end());
    symbols.insert(b.begin(), b.end());
    q = static_cast<int>(symbols.size());
  }
  CrossParse parse = cross_parse(a, b);
  SimilarityReport rep;
  rep.cross_entropy_bits_per_symbol = cross_entropy_bits(parse, q);
  rep.acs = acs(parse);
  rep.lcs = lcs(parse);
  for (const auto& tok : parse.tokens)
    (tok.is_match ? rep.match_count : rep.literal_count) += 1;
  return rep;
}

}  // namespace melseq
