#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "melseq/corpus.hpp"
#include "melseq/potts.hpp"

namespace melseq {

struct TrainConfig {
  int k_max = 10;
  double lambda = 2.0;   // L1 strength on the couplings J
  int max_iters = 5000;
  double tol = 1e-8;     // relative objective change
  uint64_t seed = 0;     // unused by the deterministic optimizer, recorded for manifests
};

struct TrainReport {
  double final_objective = 0.0;
  int iterations = 0;
  std::vector<double> objective_trace;  // accepted iterates, non-increasing
  std::vector<double> zero_fraction_trace;
  double zero_coupling_fraction = 0.0;
  double kkt_residual = 0.0;            // L1 subgradient residual, max-norm
  bool converged = false;

  std::string to_json() const;
};

// Flat gradient container shaped like (h, J).
struct Gradient {
  std::vector<double> h;
  std::vector<std::vector<double>> J;

  static Gradient zeros(int q, int k_max);
};

// Regularized negative log-pseudo-likelihood:
//   -(1/M) sum_mu log P(center | contexts) + (lambda/M) sum_k ||J_k||_1.
double pseudo_loss(const ModelParams& params,
                   const std::vector<TrainingSample>& samples, double lambda);

// Gradient of the smooth part only (L1 is handled by the proximal step).
// Parallelized over fixed-size sample blocks reduced in block order, so the
// result is identical for any thread count. pseudo_*_serial are the plain
// loops kept as a reference for testing and benchmarking.
Gradient pseudo_grad(const ModelParams& params,
                     const std::vector<TrainingSample>& samples);
Gradient pseudo_grad_serial(const ModelParams& params,
                            const std::vector<TrainingSample>& samples);
double pseudo_loss_serial(const ModelParams& params,
                          const std::vector<TrainingSample>& samples, double lambda);

// L1 subgradient optimality residual at params (max over coordinates):
// |g| at h entries and at nonzero J entries offset by (lambda/M)*sign;
// max(0, |g| - lambda/M) at zero J entries.
double kkt_residual(const ModelParams& params, const Gradient& smooth_grad,
                    double lambda, size_t m);

// Proximal-gradient (iterative soft-thresholding) minimization with
// backtracking line search, starting from all-zero parameters. After
// convergence h is shifted to mean zero to fix the additive gauge.
std::pair<ModelParams, TrainReport> train(const std::vector<TrainingSample>& samples,
                                          int q, const TrainConfig& config);

}  // namespace melseq
