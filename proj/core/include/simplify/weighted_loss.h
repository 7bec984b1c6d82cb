#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace simplify {

struct ComplexityEntry {
  double score = 0.0;  // predicted word complexity in [0, 4]
  bool is_content = false;
};

using ComplexityTable = std::unordered_map<std::string, ComplexityEntry>;

// Per-vocabulary loss weights. raw[v] = (4 - s_v) + 1 for content words and 1
// otherwise; normalized_pow[v] = (raw[v] / sum(raw))^alpha.
struct VocabWeights {
  std::vector<std::string> vocab;
  std::vector<double> raw;
  std::vector<double> normalized_pow;
  std::vector<double> log_weight;  // log(normalized_pow)
  double alpha = 0.0;

  size_t size() const { return vocab.size(); }
};

// Throws DataError naming the first vocabulary token missing from `table`.
VocabWeights vocab_weights(std::span<const std::string> vocab,
                           const ComplexityTable& table, double alpha);

enum class Renormalization {
  // SCE is renormalized to a distribution before the log.
  kRenormalized,
  // SCE = CE * w is used as is.
  kUnnormalized,
};

// SCE[v] proportional to probs[v] * normalized_pow[v].
std::vector<double> reweight_distribution(
    std::span<const double> probs, const VocabWeights& weights,
    Renormalization mode = Renormalization::kRenormalized);

struct LossResult {
  double loss = 0.0;
  std::vector<double> gradient_wrt_logits;
};

std::vector<double> log_softmax(std::span<const double> logits);

// Standard cross-entropy of softmax(logits) against `target`.
LossResult cross_entropy(std::span<const double> logits, size_t target);

// -log SCE[target], SCE = reweight_distribution(softmax(logits)). In the
// renormalized mode SCE equals softmax(logits + log w), so the gradient is
// SCE - onehot(target); in the unnormalized mode it is softmax - onehot.
LossResult weighted_cross_entropy(
    std::span<const double> logits, size_t target, const VocabWeights& weights,
    Renormalization mode = Renormalization::kRenormalized);

// `token<TAB>raw_weight<TAB>final_weight` lines in vocabulary order.
std::string format_weight_table(const VocabWeights& weights);

}  // namespace simplify
