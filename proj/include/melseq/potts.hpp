#pragma once

#include <span>
#include <string>
#include <vector>

#include "melseq/alphabet.hpp"

namespace melseq {

// Translation-invariant pairwise model: one local-field vector h over the
// alphabet plus one q x q interaction matrix per distance k = 1..k_max.
// Parameters are stored as they appear inside the exponential of the
// Boltzmann-Gibbs distribution (positive sign); energy() returns the
// negated Hamiltonian form.
struct ModelParams {
  int q = 0;
  int k_max = 0;
  std::vector<double> h;               // size q
  std::vector<std::vector<double>> J;  // k_max matrices, row-major q*q

  static ModelParams zeros(int q, int k_max);

  double j(int k, int left, int right) const {
    return J[static_cast<size_t>(k - 1)][static_cast<size_t>(left) * q + right];
  }
  double& j(int k, int left, int right) {
    return J[static_cast<size_t>(k - 1)][static_cast<size_t>(left) * q + right];
  }

  bool finite() const;
  size_t coupling_count() const { return static_cast<size_t>(k_max) * q * q; }

  // JSON {"q", "K_max", "h", "J"}; doubles rendered with 17 significant
  // digits so serialized models are byte-stable.
  std::string to_json() const;
  static ModelParams from_json(const std::string& text);
};

// Empirical or exact single/pair frequencies.
struct FreqStats {
  std::vector<double> single;              // size q
  std::vector<std::vector<double>> pair;   // one q*q row-major matrix per k
};

// Hamiltonian H(s) = -sum_i h(s_i) - sum_k sum_{j-i=k} J_k(s_i, s_j),
// so P(s) is proportional to exp(-H(s)).
double energy(const ModelParams& params, const PitchSequence& seq);

// Conditional distribution of one site given its neighborhood.
// left[l-1] is the symbol at distance l to the left (similarly right);
// spans shorter than k_max simply omit the missing border terms.
// Computed in log space with max-shift normalization.
std::vector<double> conditional(const ModelParams& params,
                                std::span<const int> left,
                                std::span<const int> right);

// f(sigma) = (1/N) sum_i delta(sigma, s_i).
std::vector<double> single_freq(const PitchSequence& seq);

// f_k(sigma, sigma') = (1/(N-k)) sum_{j-i=k} delta(sigma,s_i) delta(sigma',s_j),
// returned row-major (row = left symbol).
std::vector<double> pair_freq(const PitchSequence& seq, int k);

// Exact Boltzmann probabilities over all q^n states (state index encodes
// symbols most-significant-first). Refuses q^n > 2^24.
std::vector<double> exact_distribution(const ModelParams& params, int n);

// Position-averaged single marginals (over all sites) and pair marginals
// (over all left positions i <= n-k) from the exact distribution.
FreqStats exact_marginals(const ModelParams& params, int n);

}  // namespace melseq
