#include "melseq/potts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "melseq/errors.hpp"

namespace melseq {

ModelParams ModelParams::zeros(int q, int k_max) {
  if (q < 1 || k_max < 1) throw dimension_error("q and k_max must be >= 1");
  ModelParams p;
  p.q = q;
  p.k_max = k_max;
  p.h.assign(static_cast<size_t>(q), 0.0);
  p.J.assign(static_cast<size_t>(k_max),
             std::vector<double>(static_cast<size_t>(q) * q, 0.0));
  return p;
}

bool ModelParams::finite() const {
  for (double v : h)
    if (!std::isfinite(v)) return false;
  for (const auto& m : J)
    for (double v : m)
      if (!std::isfinite(v)) return false;
  return true;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string ModelParams::to_json() const {
  std::string out = "{\n  \"q\": " + std::to_string(q) +
                    ",\n  \"K_max\": " + std::to_string(k_max) + ",\n  \"h\": [";
  for (int s = 0; s < q; ++s) {
    if (s) out += ", ";
    out += fmt17(h[static_cast<size_t>(s)]);
  }
  out += "],\n  \"J\": [\n";
  for (int k = 0; k < k_max; ++k) {
    out += "    [";
    const auto& m = J[static_cast<size_t>(k)];
    for (int r = 0; r < q; ++r) {
      if (r) out += ",\n     ";
      out += "[";
      for (int c = 0; c < q; ++c) {
        if (c) out += ", ";
        out += fmt17(m[static_cast<size_t>(r) * q + c]);
      }
      out += "]";
    }
    out += k + 1 < k_max ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

ModelParams ModelParams::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  ModelParams p = zeros(doc.at("q").get<int>(), doc.at("K_max").get<int>());
  const auto& hh = doc.at("h");
  if (static_cast<int>(hh.size()) != p.q) throw data_error("model h has wrong length");
  for (int s = 0; s < p.q; ++s) p.h[static_cast<size_t>(s)] = hh[s].get<double>();
  const auto& jj = doc.at("J");
  if (static_cast<int>(jj.size()) != p.k_max) throw data_error("model J has wrong length");
  for (int k = 1; k <= p.k_max; ++k) {
    const auto& m = jj[k - 1];
    if (static_cast<int>(m.size()) != p.q) throw data_error("model J matrix wrong shape");
    for (int r = 0; r < p.q; ++r) {
      const auto& row = m[r];
      if (static_cast<int>(row.size()) != p.q) throw data_error("model J matrix wrong shape");
      for (int c = 0; c < p.q; ++c) p.j(k, r, c) = row[c].get<double>();
    }
  }
  if (!p.finite()) throw numeric_error("model contains non-finite parameters");
  return p;
}

double energy(const ModelParams& params, const PitchSequence& seq) {
  if (seq.alphabet.size() != params.q)
    throw dimension_error("sequence alphabet size " + std::to_string(seq.alphabet.size()) +
                          " != model q " + std::to_string(params.q));
  const auto& s = seq.data;
  const int n = seq.size();
  double inner = 0.0;
  for (int i = 0; i < n; ++i) inner += params.h[static_cast<size_t>(s[i])];
  for (int k = 1; k <= params.k_max; ++k)
    for (int i = 0; i + k < n; ++i) inner += params.j(k, s[i], s[i + k]);
  return -inner;
}

std::vector<double> conditional(const ModelParams& params,
                                std::span<const int> left,
                                std::span<const int> right) {
  const int q = params.q;
  if (!params.finite()) throw numeric_error("non-finite model parameter");
  std::vector<double> score(static_cast<size_t>(q));
  for (int sigma = 0; sigma < q; ++sigma) {
    double v = params.h[static_cast<size_t>(sigma)];
    for (int l = 1; l <= static_cast<int>(left.size()) && l <= params.k_max; ++l)
      v += params.j(l, left[static_cast<size_t>(l - 1)], sigma);
    for (int l = 1; l <= static_cast<int>(right.size()) && l <= params.k_max; ++l)
      v += params.j(l, sigma, right[static_cast<size_t>(l - 1)]);
    score[static_cast<size_t>(sigma)] = v;
  }
  double mx = *std::max_element(score.begin(), score.end());
  double z = 0.0;
  for (double& v : score) {
    v = std::exp(v - mx);
    z += v;
  }
  for (double& v : score) v /= z;
  return score;
}

std::vector<double> single_freq(const PitchSequence& seq) {
  const int q = seq.alphabet.size();
  std::vector<double> f(static_cast<size_t>(q), 0.0);
  for (int s : seq.data) f[static_cast<size_t>(s)] += 1.0;
  for (double& v : f) v /= seq.size();
  return f;
}

std::vector<double> pair_freq(const PitchSequence& seq, int k) {
  const int q = seq.alphabet.size();
  const int n = seq.size();
  if (k < 1 || k >= n)
    throw dimension_error("pair distance k=" + std::to_string(k) +
                          " out of range for N=" + std::to_string(n));
  std::vector<double> f(static_cast<size_t>(q) * q, 0.0);
  for (int i = 0; i + k < n; ++i)
    f[static_cast<size_t>(seq.data[i]) * q + seq.data[i + k]] += 1.0;
  for (double& v : f) v /= static_cast<double>(n - k);
  return f;
}

std::vector<double> exact_distribution(const ModelParams& params, int n) {
  const int q = params.q;
  double states = std::pow(static_cast<double>(q), n);
  if (n < 1 || states > static_cast<double>(1 << 24))
    throw data_error("state space q^N too large to enumerate");
  const size_t total = static_cast<size_t>(states + 0.5);
  std::vector<double> logw(total);
  std::vector<int> s(static_cast<size_t>(n), 0);
  double mx = -1e300;
  for (size_t idx = 0; idx < total; ++idx) {
    double inner = 0.0;
    for (int i = 0; i < n; ++i) inner += params.h[static_cast<size_t>(s[i])];
    for (int k = 1; k <= params.k_max; ++k)
      for (int i = 0; i + k < n; ++i) inner += params.j(k, s[i], s[i + k]);
    logw[idx] = inner;
    mx = std::max(mx, inner);
    // odometer increment, least-significant at the back
    for (int i = n - 1; i >= 0; --i) {
      if (++s[static_cast<size_t>(i)] < q) break;
      s[static_cast<size_t>(i)] = 0;
    }
  }
  double z = 0.0;
  for (double& v : logw) {
    v = std::exp(v - mx);
    z += v;
  }
  for (double& v : logw) v /= z;
  return logw;
}

FreqStats exact_marginals(const ModelParams& params, int n) {
  const int q = params.q;
  std::vector<double> p = exact_distribution(params, n);
  // per-position accumulators
  std::vector<std::vector<double>> site(static_cast<size_t>(n),
                                        std::vector<double>(static_cast<size_t>(q), 0.0));
  const int kmax = std::min(params.k_max, n - 1);
  std::vector<std::vector<double>> pairs(static_cast<size_t>(kmax),
                                         std::vector<double>(static_cast<size_t>(q) * q, 0.0));
  std::vector<int> s(static_cast<size_t>(n), 0);
  for (size_t idx = 0; idx < p.size(); ++idx) {
    for (int i = 0; i < n; ++i) site[static_cast<size_t>(i)][static_cast<size_t>(s[i])] += p[idx];
    for (int k = 1; k <= kmax; ++k)
      for (int i = 0; i + k < n; ++i)
        pairs[static_cast<size_t>(k - 1)][static_cast<size_t>(s[i]) * q + s[i + k]] += p[idx];
    for (int i = n - 1; i >= 0; --i) {
      if (++s[static_cast<size_t>(i)] < q) break;
      s[static_cast<size_t>(i)] = 0;
    }
  }
  FreqStats out;
  out.single.assign(static_cast<size_t>(q), 0.0);
  for (int i = 0; i < n; ++i)
    for (int sig = 0; sig < q; ++sig)
      out.single[static_cast<size_t>(sig)] += site[static_cast<size_t>(i)][static_cast<size_t>(sig)] / n;
  for (int k = 1; k <= kmax; ++k) {
    auto& m = pairs[static_cast<size_t>(k - 1)];
    for (double& v : m) v /= static_cast<double>(n - k);
    out.pair.push_back(std::move(m));
  }
  return out;
}

}  // namespace melseq
