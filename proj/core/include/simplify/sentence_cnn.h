#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simplify/corpus.h"
#include "simplify/embeddings.h"

namespace simplify {

inline constexpr std::string_view kPadToken = "<pad>";

struct CnnConfig {
  std::vector<int> widths = {3, 4, 5};
  int filters_per_width = 32;
  int epochs = 40;
  int batch_size = 16;
  double learning_rate = 0.003;
  uint64_t seed = 1;
};

struct LabeledSentence {
  Sentence tokens;
  double level = 0.0;
};

// Convolutions of several widths over fixed word embeddings, ReLU, max-pool
// over time, and a linear regression head. All parameters live in one flat
// vector so optimizers and gradient checks can treat them uniformly.
class SentenceComplexityModel {
 public:
  struct ParameterGroup {
    std::string name;
    size_t offset = 0;
    size_t size = 0;
  };

  SentenceComplexityModel(std::shared_ptr<const EmbeddingTable> embeddings,
                          CnnConfig config);

  const CnnConfig& config() const { return config_; }
  const EmbeddingTable& embeddings() const { return *embeddings_; }
  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }
  const std::vector<ParameterGroup>& groups() const { return groups_; }

  // Random initialization under config.seed.
  void initialize(double output_bias);

  // Unclamped regression output. `<pad>` tokens are dropped; sentences
  // shorter than the widest filter are zero-padded on the right.
  double forward(std::span<const std::string> tokens) const;

  // Mean squared error over the batch; accumulates d(loss)/d(params) into
  // `gradient` (resized and zeroed here).
  double loss_and_gradient(std::span<const LabeledSentence> batch,
                           std::vector<double>& gradient) const;

  double final_training_loss() const { return final_loss_; }
  void set_final_training_loss(double loss) { final_loss_ = loss; }

  std::string serialize() const;
  static SentenceComplexityModel deserialize(
      std::string_view text, std::shared_ptr<const EmbeddingTable> embeddings);

 private:
  struct Activation;

  size_t conv_weight_offset(size_t group) const { return groups_[2 * group].offset; }
  size_t conv_bias_offset(size_t group) const { return groups_[2 * group + 1].offset; }
  size_t head_weight_offset() const { return groups_[groups_.size() - 2].offset; }
  size_t head_bias_offset() const { return groups_.back().offset; }

  std::vector<std::vector<double>> embed(std::span<const std::string> tokens) const;
  double forward_impl(const std::vector<std::vector<double>>& x,
                      Activation* activation) const;

  std::shared_ptr<const EmbeddingTable> embeddings_;
  CnnConfig config_;
  std::vector<ParameterGroup> groups_;
  std::vector<double> params_;
  double final_loss_ = 0.0;
};

// Mini-batch Adam on the MSE objective. Throws DataError for fewer than 10
// sentences and NumericError if the loss becomes non-finite.
SentenceComplexityModel fit_sentence_cnn(
    std::span<const LabeledSentence> sentences,
    std::shared_ptr<const EmbeddingTable> embeddings, const CnnConfig& config);

// Clamped to [0, 4]. Throws DataError for an empty sentence.
double predict_sentence_complexity(const SentenceComplexityModel& model,
                                   std::span<const std::string> sentence);

}  // namespace simplify
