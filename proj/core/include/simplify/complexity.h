#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simplify/corpus.h"
#include "simplify/embeddings.h"

namespace simplify {

inline constexpr double kMinComplexity = 0.0;
inline constexpr double kMaxComplexity = 4.0;

double clamp_complexity(double value);

// Vowel groups (a e i o u y), minus a trailing single silent 'e', never
// below 1. Words with non-letters count as 1.
int count_syllables(std::string_view word);

// Number of UTF-8 code points.
int utf8_length(std::string_view word);

struct WordFeatures {
  int length = 1;
  int syllables = 1;
  double log_frequency = 0.0;  // ln(count + 1)
  std::vector<double> embedding;

  // [length, syllables, log_frequency, embedding...]
  std::vector<double> as_vector() const;
};

// Frequency is the word's total count across levels; OOV embeddings are zero.
WordFeatures extract_word_features(std::string_view word,
                                   const WordLevelCounts& counts,
                                   const EmbeddingTable& embeddings);
WordFeatures extract_word_features(std::string_view word, int64_t frequency,
                                   const EmbeddingTable& embeddings);

// Ridge regression on standardized features with an unpenalized bias.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::vector<double> weights, double bias,
              std::vector<double> feature_means,
              std::vector<double> feature_scales, double ridge_lambda);

  size_t dimension() const { return weights_.size(); }
  double bias() const { return bias_; }
  double ridge_lambda() const { return lambda_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& feature_means() const { return means_; }
  const std::vector<double>& feature_scales() const { return scales_; }

  // Weights and bias expressed on the unstandardized features.
  std::vector<double> raw_weights() const;
  double raw_bias() const;

  double predict_unclamped(std::span<const double> features) const;
  double predict(std::span<const double> features) const;

  std::string serialize() const;
  static LinearModel deserialize(std::string_view text);

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::vector<double> means_;
  std::vector<double> scales_;
  double lambda_ = 0.0;
};

// Solves (Z^T Z + lambda I) w = Z^T (y - mean(y)) in closed form, where Z is
// X standardized column-wise (constant columns get scale 1). Throws
// NumericError if the system is singular.
LinearModel fit_ridge_regression(const Eigen::MatrixXd& features,
                                 std::span<const double> labels,
                                 double lambda);

// Column-standardized copy of `features` as the model sees it.
Eigen::MatrixXd standardize(const LinearModel& model,
                            const Eigen::MatrixXd& features);

double predict_word_complexity(const LinearModel& model,
                               const WordFeatures& features);

enum class BaselineKind { kLength, kFrequency };

struct BaselineStats {
  BaselineKind kind = BaselineKind::kLength;
  double min = 0.0;
  double max = 0.0;
};

double baseline_feature(BaselineKind kind, const WordFeatures& features);
BaselineStats fit_baseline(BaselineKind kind,
                           std::span<const WordFeatures> training_words);

// Min-max scaled onto [0, 4] using the training range; 2.0 when max == min.
double minmax_to_levels(double value, double min, double max);
double baseline_predict(const BaselineStats& stats,
                        const WordFeatures& features);

struct RegressionReport {
  double pearson = 0.0;
  double mse = 0.0;
};

// Pearson r and mean squared error. Throws DataError if gold is constant or
// the lengths differ; constant predictions give r = 0.
RegressionReport evaluate_predictor(std::span<const double> predictions,
                                    std::span<const double> gold);

// `word<TAB>score` lines in word order.
std::string format_lexicon(const std::map<std::string, double>& scores);
std::map<std::string, double> parse_lexicon(
    const std::vector<std::string>& lines);

}  // namespace simplify
