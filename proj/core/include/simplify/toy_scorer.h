#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simplify/corpus.h"
#include "simplify/decoder.h"
#include "simplify/vocabulary.h"
#include "simplify/weighted_loss.h"

namespace simplify {

enum class LossMode { kStandard, kWeighted };

struct ToyScorerConfig {
  int embedding_dim = 16;
  int hidden_dim = 32;
  int epochs = 30;
  int batch_size = 8;
  double learning_rate = 0.01;
  uint64_t seed = 1;
  // In weighted mode the output layer keeps the log-weight shift at
  // inference, so decoding samples the distribution the loss was fitted to.
  bool reweight_at_inference = true;
};

// One training example: source ids and target ids ending with the end marker.
struct ToyExample {
  std::vector<int> source;
  std::vector<int> target;
};

// Minimal conditional model: the source is summarized as the mean of its
// token embeddings, the previous token's embedding is concatenated to it and
// passed through one tanh layer to output logits.
class ToyScorer : public SequenceScorer {
 public:
  ToyScorer(Vocabulary vocab, const ToyScorerConfig& config);

  size_t vocab_size() const override { return vocab_.size(); }
  int eos_id() const override { return Vocabulary::kEos; }
  std::vector<double> log_probs(std::span<const int> source,
                                std::span<const int> prefix) const override;

  const Vocabulary& vocabulary() const { return vocab_; }
  const ToyScorerConfig& config() const { return config_; }
  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  void initialize(uint64_t seed);
  // Added to the logits before normalization at inference. Empty = none.
  void set_output_shift(std::vector<double> shift);
  const std::vector<double>& output_shift() const { return shift_; }

  // Mean per-token loss over the batch; `gradient` is overwritten.
  double loss_and_gradient(std::span<const ToyExample> batch, LossMode mode,
                           const VocabWeights* weights,
                           std::vector<double>& gradient) const;

  std::string serialize() const;
  static ToyScorer deserialize(std::string_view text);

 private:
  size_t d() const { return static_cast<size_t>(config_.embedding_dim); }
  size_t h() const { return static_cast<size_t>(config_.hidden_dim); }
  size_t w1_offset() const { return vocab_.size() * d(); }
  size_t b1_offset() const { return w1_offset() + h() * 2 * d(); }
  size_t w2_offset() const { return b1_offset() + h(); }
  size_t b2_offset() const { return w2_offset() + vocab_.size() * h(); }

  std::vector<double> source_vector(std::span<const int> source) const;
  // Fills hidden activations and returns logits.
  std::vector<double> logits(std::span<const double> source_vec, int previous,
                             std::vector<double>& hidden) const;

  Vocabulary vocab_;
  ToyScorerConfig config_;
  std::vector<double> params_;
  std::vector<double> shift_;
};

std::vector<ToyExample> make_examples(std::span<const AlignedPair> pairs,
                                      const Vocabulary& vocab);

// Mini-batch Adam under the selected loss. `weights` must be aligned with the
// vocabulary in weighted mode and may be null in standard mode.
ToyScorer train_toy_scorer(std::span<const AlignedPair> pairs,
                           const Vocabulary& vocab, LossMode mode,
                           const VocabWeights* weights,
                           const ToyScorerConfig& config);

}  // namespace simplify
