#include "melseq/training.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "melseq/errors.hpp"

namespace melseq {

std::string TrainReport::to_json() const {
  nlohmann::json doc;
  doc["final_objective"] = final_objective;
  doc["iterations"] = iterations;
  doc["zero_coupling_fraction"] = zero_coupling_fraction;
  doc["kkt_residual"] = kkt_residual;
  doc["converged"] = converged;
  doc["objective_trace"] = objective_trace;
  return doc.dump(2) + "\n";
}

Gradient Gradient::zeros(int q, int k_max) {
  Gradient g;
  g.h.assign(static_cast<size_t>(q), 0.0);
  g.J.assign(static_cast<size_t>(k_max),
             std::vector<double>(static_cast<size_t>(q) * q, 0.0));
  return g;
}

namespace {

constexpr size_t kBlock = 256;  // reduction unit, independent of thread count

void sample_scores(const ModelParams& p, const TrainingSample& s,
                   std::vector<double>& score) {
  const int q = p.q;
  for (int sigma = 0; sigma < q; ++sigma) score[static_cast<size_t>(sigma)] = p.h[static_cast<size_t>(sigma)];
  for (int l = 1; l <= s.k_max; ++l) {
    const double* row = p.J[static_cast<size_t>(l - 1)].data() + static_cast<size_t>(s.left(l)) * q;
    const int b = s.right(l);
    const double* mat = p.J[static_cast<size_t>(l - 1)].data();
    for (int sigma = 0; sigma < q; ++sigma)
      score[static_cast<size_t>(sigma)] += row[sigma] + mat[static_cast<size_t>(sigma) * q + b];
  }
}

double range_loss(const ModelParams& p, const std::vector<TrainingSample>& samples,
                  size_t begin, size_t end) {
  const int q = p.q;
  std::vector<double> score(static_cast<size_t>(q));
  double acc = 0.0;
  for (size_t mu = begin; mu < end; ++mu) {
    const TrainingSample& s = samples[mu];
    sample_scores(p, s, score);
    double mx = *std::max_element(score.begin(), score.end());
    double z = 0.0;
    for (double v : score) z += std::exp(v - mx);
    acc += mx + std::log(z) - score[static_cast<size_t>(s.center())];
  }
  return acc;
}

void range_grad(const ModelParams& p, const std::vector<TrainingSample>& samples,
                size_t begin, size_t end, Gradient& g) {
  const int q = p.q;
  std::vector<double> prob(static_cast<size_t>(q));
  for (size_t mu = begin; mu < end; ++mu) {
    const TrainingSample& s = samples[mu];
    sample_scores(p, s, prob);
    double mx = *std::max_element(prob.begin(), prob.end());
    double z = 0.0;
    for (double& v : prob) {
      v = std::exp(v - mx);
      z += v;
    }
    for (double& v : prob) v /= z;
    const int c = s.center();
    for (int sigma = 0; sigma < q; ++sigma) g.h[static_cast<size_t>(sigma)] += prob[static_cast<size_t>(sigma)];
    g.h[static_cast<size_t>(c)] -= 1.0;
    for (int k = 1; k <= s.k_max; ++k) {
      double* mat = g.J[static_cast<size_t>(k - 1)].data();
      const int a = s.left(k);
      const int b = s.right(k);
      double* row = mat + static_cast<size_t>(a) * q;
      for (int sigma = 0; sigma < q; ++sigma) row[sigma] += prob[static_cast<size_t>(sigma)];
      row[c] -= 1.0;
      for (int sigma = 0; sigma < q; ++sigma) mat[static_cast<size_t>(sigma) * q + b] += prob[static_cast<size_t>(sigma)];
      mat[static_cast<size_t>(c) * q + b] -= 1.0;
    }
  }
}

void check_samples(const std::vector<TrainingSample>& samples, int q) {
  if (samples.empty()) throw data_error("empty training sample list");
  const int k_max = samples.front().k_max;
  for (const TrainingSample& s : samples) {
    if (s.k_max != k_max || static_cast<int>(s.window.size()) != 2 * k_max + 1)
      throw dimension_error("inconsistent training window size");
    for (int v : s.window)
      if (v < 0 || v >= q) throw dimension_error("sample symbol out of alphabet range");
  }
}

double l1_norm(const ModelParams& p) {
  double acc = 0.0;
  for (const auto& m : p.J)
    for (double v : m) acc += std::fabs(v);
  return acc;
}

}  // namespace

double pseudo_loss_serial(const ModelParams& params,
                          const std::vector<TrainingSample>& samples, double lambda) {
  check_samples(samples, params.q);
  const double m = static_cast<double>(samples.size());
  return range_loss(params, samples, 0, samples.size()) / m + lambda / m * l1_norm(params);
}

double pseudo_loss(const ModelParams& params,
                   const std::vector<TrainingSample>& samples, double lambda) {
  check_samples(samples, params.q);
  const size_t n = samples.size();
  const size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    size_t begin = static_cast<size_t>(b) * kBlock;
    partial[static_cast<size_t>(b)] =
        range_loss(params, samples, begin, std::min(begin + kBlock, n));
  }
  double acc = 0.0;
  for (double v : partial) acc += v;  // fixed block order
  const double m = static_cast<double>(n);
  return acc / m + lambda / m * l1_norm(params);
}

Gradient pseudo_grad_serial(const ModelParams& params,
                            const std::vector<TrainingSample>& samples) {
  check_samples(samples, params.q);
  Gradient g = Gradient::zeros(params.q, params.k_max);
  range_grad(params, samples, 0, samples.size(), g);
  const double inv_m = 1.0 / static_cast<double>(samples.size());
  for (double& v : g.h) v *= inv_m;
  for (auto& m : g.J)
    for (double& v : m) v *= inv_m;
  return g;
}

Gradient pseudo_grad(const ModelParams& params,
                     const std::vector<TrainingSample>& samples) {
  check_samples(samples, params.q);
  const size_t n = samples.size();
  const size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<Gradient> partial(nblocks);
#pragma omp parallel for schedule(dynamic)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    size_t begin = static_cast<size_t>(b) * kBlock;
    Gradient g = Gradient::zeros(params.q, params.k_max);
    range_grad(params, samples, begin, std::min(begin + kBlock, n), g);
    partial[static_cast<size_t>(b)] = std::move(g);
  }
  Gradient total = Gradient::zeros(params.q, params.k_max);
  for (const Gradient& g : partial) {  // fixed block order
    for (size_t i = 0; i < total.h.size(); ++i) total.h[i] += g.h[i];
    for (size_t k = 0; k < total.J.size(); ++k)
      for (size_t i = 0; i < total.J[k].size(); ++i) total.J[k][i] += g.J[k][i];
  }
  const double inv_m = 1.0 / static_cast<double>(n);
  for (double& v : total.h) v *= inv_m;
  for (auto& m : total.J)
    for (double& v : m) v *= inv_m;
  return total;
}

double kkt_residual(const ModelParams& params, const Gradient& g, double lambda,
                    size_t m) {
  const double thresh = lambda / static_cast<double>(m);
  double worst = 0.0;
  for (double v : g.h) worst = std::max(worst, std::fabs(v));
  for (size_t k = 0; k < params.J.size(); ++k) {
    for (size_t i = 0; i < params.J[k].size(); ++i) {
      double x = params.J[k][i];
      double gv = g.J[k][i];
      double r = x == 0.0 ? std::max(0.0, std::fabs(gv) - thresh)
                          : std::fabs(gv + thresh * (x > 0.0 ? 1.0 : -1.0));
      worst = std::max(worst, r);
    }
  }
  return worst;
}

std::pair<ModelParams, TrainReport> train(const std::vector<TrainingSample>& samples,
                                          int q, const TrainConfig& config) {
  check_samples(samples, q);
  const int k_max = samples.front().k_max;
  if (config.k_max != k_max)
    throw dimension_error("config k_max does not match sample window size");
  if (config.lambda < 0.0 || config.tol <= 0.0 || config.max_iters < 1)
    throw data_error("invalid training configuration");

  const size_t m = samples.size();
  const double soft_scale = config.lambda / static_cast<double>(m);

  ModelParams x = ModelParams::zeros(q, k_max);
  double fx = pseudo_loss(x, samples, 0.0);
  Gradient gx = pseudo_grad(x, samples);

  auto zero_fraction = [](const ModelParams& p) {
    size_t zeros = 0;
    for (const auto& mat : p.J)
      for (double v : mat) zeros += v == 0.0 ? 1 : 0;
    return static_cast<double>(zeros) / static_cast<double>(p.coupling_count());
  };

  TrainReport report;
  report.objective_trace.push_back(fx);  // J = 0, L1 term vanishes
  report.zero_fraction_trace.push_back(1.0);

  double eta = 2.0 / (2.0 * k_max + 1.0);
  const double eta_cap = 1e4;
  bool converged = false;
  int iter = 0;

  auto composite = [&](const ModelParams& p, double smooth) {
    double l1 = 0.0;
    for (const auto& mat : p.J)
      for (double v : mat) l1 += std::fabs(v);
    return smooth + soft_scale * l1;
  };

  double obj = composite(x, fx);

  for (iter = 1; iter <= config.max_iters; ++iter) {
    ModelParams cand = x;
    double f_cand = 0.0;
    // backtracking on the quadratic majorization condition
    for (;;) {
      for (int s = 0; s < q; ++s)
        cand.h[static_cast<size_t>(s)] = x.h[static_cast<size_t>(s)] - eta * gx.h[static_cast<size_t>(s)];
      const double soft = eta * soft_scale;
      for (int k = 0; k < k_max; ++k) {
        const auto& xm = x.J[static_cast<size_t>(k)];
        const auto& gm = gx.J[static_cast<size_t>(k)];
        auto& cm = cand.J[static_cast<size_t>(k)];
        for (size_t i = 0; i < xm.size(); ++i) {
          double v = xm[i] - eta * gm[i];
          cm[i] = v > soft ? v - soft : (v < -soft ? v + soft : 0.0);
        }
      }
      f_cand = pseudo_loss(cand, samples, 0.0);
      if (!std::isfinite(f_cand))
        throw numeric_error("objective diverged at iteration " + std::to_string(iter) +
                            " (step " + std::to_string(eta) + ")");
      double lin = 0.0, quad = 0.0;
      for (int s = 0; s < q; ++s) {
        double d = cand.h[static_cast<size_t>(s)] - x.h[static_cast<size_t>(s)];
        lin += gx.h[static_cast<size_t>(s)] * d;
        quad += d * d;
      }
      for (int k = 0; k < k_max; ++k)
        for (size_t i = 0; i < x.J[static_cast<size_t>(k)].size(); ++i) {
          double d = cand.J[static_cast<size_t>(k)][i] - x.J[static_cast<size_t>(k)][i];
          lin += gx.J[static_cast<size_t>(k)][i] * d;
          quad += d * d;
        }
      if (f_cand <= fx + lin + quad / (2.0 * eta) + 1e-12) break;
      eta *= 0.5;
      if (eta < 1e-16)
        throw numeric_error("line search collapsed at iteration " + std::to_string(iter));
    }

    double obj_cand = composite(cand, f_cand);
    double rel = (obj - obj_cand) / std::max(1.0, std::fabs(obj));
    x = std::move(cand);
    fx = f_cand;
    obj = obj_cand;
    report.objective_trace.push_back(obj);
    report.zero_fraction_trace.push_back(zero_fraction(x));
    gx = pseudo_grad(x, samples);

    if (rel < config.tol) {
      report.kkt_residual = kkt_residual(x, gx, config.lambda, m);
      if (report.kkt_residual < 1e-4) {
        converged = true;
        break;
      }
    }
    eta = std::min(eta * 1.25, eta_cap);
  }

  // fix the additive gauge in h; conditionals are invariant to this shift
  double mean_h = 0.0;
  for (double v : x.h) mean_h += v;
  mean_h /= q;
  for (double& v : x.h) v -= mean_h;

  report.final_objective = obj;
  report.iterations = std::min(iter, config.max_iters);
  report.converged = converged;
  report.kkt_residual = kkt_residual(x, pseudo_grad(x, samples), config.lambda, m);
  size_t zeros = 0;
  for (const auto& mat : x.J)
    for (double v : mat) zeros += v == 0.0 ? 1 : 0;
  report.zero_coupling_fraction =
      static_cast<double>(zeros) / static_cast<double>(x.coupling_count());
  return {std::move(x), std::move(report)};
}

}  // namespace melseq
