#include "simplify/weighted_loss.h"

#include <algorithm>
#include <cmath>

#include "simplify/complexity.h"
#include "simplify/error.h"
#include "simplify/io.h"

namespace simplify {
namespace {

void check_target(std::span<const double> logits, size_t target) {
  if (target >= logits.size()) {
    throw DataError("loss target index " + std::to_string(target) +
                    " outside vocabulary of " + std::to_string(logits.size()));
  }
  for (double z : logits) {
    if (!std::isfinite(z)) throw NumericError("non-finite logit");
  }
}

// -log softmax(shifted)[target] and its gradient, softmax(shifted) - onehot.
LossResult softmax_loss(std::vector<double> shifted, size_t target) {
  const std::vector<double> logp = log_softmax(shifted);
  LossResult result;
  result.loss = -logp[target];
  result.gradient_wrt_logits.resize(shifted.size());
  for (size_t v = 0; v < shifted.size(); ++v) {
    result.gradient_wrt_logits[v] = std::exp(logp[v]);
  }
  result.gradient_wrt_logits[target] -= 1.0;
  return result;
}

}  // namespace

VocabWeights vocab_weights(std::span<const std::string> vocab,
                           const ComplexityTable& table, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a finite value >= 0");
  }
  VocabWeights w;
  w.alpha = alpha;
  w.vocab.assign(vocab.begin(), vocab.end());
  w.raw.reserve(vocab.size());
  for (const auto& token : vocab) {
    auto it = table.find(token);
    if (it == table.end()) {
      throw DataError("complexity table has no entry for '" + token + "'");
    }
    const auto& entry = it->second;
    w.raw.push_back(entry.is_content
                        ? (kMaxComplexity - clamp_complexity(entry.score)) + 1.0
                        : 1.0);
  }
  double total = 0.0;
  for (double r : w.raw) total += r;
  w.normalized_pow.reserve(vocab.size());
  w.log_weight.reserve(vocab.size());
  for (double r : w.raw) {
    const double p = std::pow(r / total, alpha);
    w.normalized_pow.push_back(p);
    w.log_weight.push_back(alpha * std::log(r / total));
  }
  return w;
}

std::vector<double> reweight_distribution(std::span<const double> probs,
                                          const VocabWeights& weights,
                                          Renormalization mode) {
  if (probs.size() != weights.size()) {
    throw DataError("reweight_distribution: size mismatch");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw DataError("reweight_distribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw DataError("reweight_distribution: probabilities do not sum to 1");
  }
  std::vector<double> out(probs.size());
  double z = 0.0;
  for (size_t v = 0; v < probs.size(); ++v) {
    out[v] = probs[v] * weights.normalized_pow[v];
    z += out[v];
  }
  if (!(z > 0.0)) throw NumericError("reweighted distribution has zero mass");
  if (mode == Renormalization::kRenormalized) {
    for (double& x : out) x /= z;
  }
  return out;
}

std::vector<double> log_softmax(std::span<const double> logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double s = 0.0;
  for (double z : logits) s += std::exp(z - m);
  const double lse = m + std::log(s);
  std::vector<double> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
  return out;
}

LossResult cross_entropy(std::span<const double> logits, size_t target) {
  check_target(logits, target);
  return softmax_loss(std::vector<double>(logits.begin(), logits.end()), target);
}

LossResult weighted_cross_entropy(std::span<const double> logits,
                                  size_t target, const VocabWeights& weights,
                                  Renormalization mode) {
  check_target(logits, target);
  if (logits.size() != weights.size()) {
    throw DataError("weighted_cross_entropy: logits and weights differ in size");
  }
  if (mode == Renormalization::kUnnormalized) {
    LossResult r = cross_entropy(logits, target);
    r.loss -= weights.log_weight[target];
    return r;
  }
  std::vector<double> shifted(logits.size());
  for (size_t v = 0; v < logits.size(); ++v) {
    shifted[v] = logits[v] + weights.log_weight[v];
  }
  return softmax_loss(std::move(shifted), target);
}

std::string format_weight_table(const VocabWeights& weights) {
  std::string out;
  for (size_t v = 0; v < weights.size(); ++v) {
    out += weights.vocab[v] + '\t' + io::format_double(weights.raw[v]) + '\t' +
           io::format_double(weights.normalized_pow[v]) + '\n';
  }
  return out;
}

}  // namespace simplify
