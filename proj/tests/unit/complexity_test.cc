#include <gtest/gtest.h>

#include <cmath>

#include "simplify/complexity.h"
#include "simplify/error.h"
#include "support/oracles.h"

namespace simplify {
namespace {

TEST(Syllables, HandRules) {
  EXPECT_EQ(count_syllables("cat"), 1);
  EXPECT_EQ(count_syllables("banana"), 3);
  EXPECT_EQ(count_syllables("pledge"), 1);
  EXPECT_EQ(count_syllables("proliferation"), 5);
  EXPECT_EQ(count_syllables("300,000"), 1);
}

TEST(WordFeatures, DirectFormula) {
  WordLevelCounts counts;
  counts.set("a", {20, 20, 20, 20, 20});
  EmbeddingTable table(2);
  table.set("a", {0.5, -1.0});
  const auto f = extract_word_features("a", counts, table);
  EXPECT_EQ(f.length, 1);
  EXPECT_EQ(f.syllables, 1);
  EXPECT_DOUBLE_EQ(f.log_frequency, std::log(101.0));
  EXPECT_EQ(f.embedding, (std::vector<double>{0.5, -1.0}));
  EXPECT_EQ(f.as_vector(), (std::vector<double>{1, 1, std::log(101.0), 0.5, -1.0}));
}

TEST(WordFeatures, OovEmbeddingIsZero) {
  EmbeddingTable table(3);
  const auto f = extract_word_features("proliferation", 4, table);
  EXPECT_EQ(f.length, 13);
  EXPECT_EQ(f.syllables, 5);
  EXPECT_EQ(f.embedding, (std::vector<double>{0, 0, 0}));
}

TEST(Ridge, RecoversExactLinearData) {
  Eigen::MatrixXd x(5, 1);
  x << 0, 1, 2, 3, 4;
  const std::vector<double> y = {0, 2, 4, 6, 8};
  const auto model = fit_ridge_regression(x, y, 0.0);
  EXPECT_NEAR(model.raw_weights()[0], 2.0, 1e-9);
  EXPECT_NEAR(model.raw_bias(), 0.0, 1e-9);
  for (int i = 0; i < 5; ++i) {
    const double xi = i;
    EXPECT_NEAR(model.predict_unclamped(std::span<const double>(&xi, 1)), y[i], 1e-9);
  }
}

TEST(Ridge, HugePenaltyPredictsMean) {
  Eigen::MatrixXd x(4, 2);
  x << 0, 1, 1, 0, 2, 3, 3, 1;
  const std::vector<double> y = {0.5, 1.0, 3.0, 2.5};
  const auto model = fit_ridge_regression(x, y, 1e9);
  for (double w : model.weights()) EXPECT_NEAR(w, 0.0, 1e-6);
  const std::vector<double> probe = {5.0, -2.0};
  EXPECT_NEAR(model.predict_unclamped(probe), 1.75, 1e-6);
}

TEST(Ridge, SingularWithoutPenaltyThrows) {
  Eigen::MatrixXd x(3, 2);
  x << 1, 2, 2, 4, 3, 6;
  EXPECT_THROW(fit_ridge_regression(x, std::vector<double>{1, 2, 3}, 0.0), NumericError);
}

TEST(Ridge, MatchesGradientDescentOracle) {
  Eigen::MatrixXd x(3, 2);
  x << 1.0, 2.0, 2.0, 0.5, 4.0, 1.5;
  const std::vector<double> y = {1.0, 2.5, 3.0};
  const double lambda = 0.3;
  const auto model = fit_ridge_regression(x, y, lambda);
  // Minimize ||y - mean(y) - Z w||^2 + lambda ||w||^2 by plain descent on
  // the same standardized columns.
  const auto& mu = model.feature_means();
  const auto& sd = model.feature_scales();
  const double ybar = (y[0] + y[1] + y[2]) / 3.0;
  std::vector<double> w = {0.0, 0.0};
  for (int it = 0; it < 200000; ++it) {
    std::vector<double> g = {2 * lambda * w[0], 2 * lambda * w[1]};
    for (int i = 0; i < 3; ++i) {
      const double z0 = (x(i, 0) - mu[0]) / sd[0], z1 = (x(i, 1) - mu[1]) / sd[1];
      const double r = z0 * w[0] + z1 * w[1] - (y[static_cast<size_t>(i)] - ybar);
      g[0] += 2 * r * z0;
      g[1] += 2 * r * z1;
    }
    w[0] -= 0.01 * g[0];
    w[1] -= 0.01 * g[1];
  }
  EXPECT_NEAR(model.weights()[0], w[0], 1e-6);
  EXPECT_NEAR(model.weights()[1], w[1], 1e-6);
  EXPECT_NEAR(model.bias(), ybar, 1e-9);
}

TEST(Ridge, SerializeRoundTrip) {
  Eigen::MatrixXd x(4, 2);
  x << 0, 1, 1, 0, 2, 3, 3, 1;
  const auto model = fit_ridge_regression(x, std::vector<double>{0.5, 1.0, 3.0, 2.5}, 0.1);
  const auto back = LinearModel::deserialize(model.serialize());
  EXPECT_EQ(back.serialize(), model.serialize());
  const std::vector<double> probe = {1.5, 2.0};
  EXPECT_EQ(back.predict(probe), model.predict(probe));
}

TEST(PredictWordComplexity, ConstantAndClamp) {
  WordFeatures f;
  f.embedding = {0.0};
  const auto dims = f.as_vector().size();
  const LinearModel flat(std::vector<double>(dims, 0.0), 2.0, std::vector<double>(dims, 0.0),
                         std::vector<double>(dims, 1.0), 1.0);
  EXPECT_EQ(predict_word_complexity(flat, f), 2.0);
  const LinearModel high(std::vector<double>(dims, 0.0), 4.7, std::vector<double>(dims, 0.0),
                         std::vector<double>(dims, 1.0), 1.0);
  EXPECT_EQ(predict_word_complexity(high, f), 4.0);
}

WordFeatures word(int length, double log_freq) {
  WordFeatures f;
  f.length = length;
  f.log_frequency = log_freq;
  return f;
}

TEST(Baseline, LengthEndpointsAndInterpolation) {
  const std::vector<WordFeatures> train = {word(2, 1.0), word(10, 5.0), word(6, 3.0)};
  const auto stats = fit_baseline(BaselineKind::kLength, train);
  EXPECT_EQ(baseline_predict(stats, word(10, 0)), 4.0);
  EXPECT_EQ(baseline_predict(stats, word(2, 0)), 0.0);
  EXPECT_DOUBLE_EQ(baseline_predict(stats, word(5, 0)), 1.5);
}

TEST(Baseline, DegenerateRangeGivesMidpoint) {
  const std::vector<WordFeatures> train = {word(4, 1.0), word(4, 1.0)};
  EXPECT_EQ(baseline_predict(fit_baseline(BaselineKind::kLength, train), word(9, 0)), 2.0);
}

TEST(Baseline, FrequencyUsesLogFrequency) {
  const std::vector<WordFeatures> train = {word(1, 0.0), word(1, 8.0)};
  const auto stats = fit_baseline(BaselineKind::kFrequency, train);
  EXPECT_DOUBLE_EQ(baseline_predict(stats, word(1, 2.0)), 1.0);
}

TEST(EvaluatePredictor, PerfectAndInverted) {
  const std::vector<double> gold = {0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(evaluate_predictor(gold, gold).pearson, 1.0);
  EXPECT_EQ(evaluate_predictor(gold, gold).mse, 0.0);
  const std::vector<double> neg = {1.5, 0.5, -0.5, -1.5};
  EXPECT_DOUBLE_EQ(evaluate_predictor(neg, gold).pearson, -1.0);
}

TEST(EvaluatePredictor, HandDataset) {
  const std::vector<double> pred = {1, 2, 3}, gold = {2, 2.5, 4};
  const auto r = evaluate_predictor(pred, gold);
  EXPECT_NEAR(r.pearson, 2.0 / std::sqrt(2.0 * 13.0 / 6.0), 1e-12);
  EXPECT_NEAR(r.pearson, oracle::pearson(pred, gold), 1e-12);
  EXPECT_NEAR(r.mse, 0.75, 1e-12);
}

TEST(EvaluatePredictor, ConstantGoldThrows) {
  EXPECT_THROW(evaluate_predictor(std::vector<double>{1, 2}, std::vector<double>{3, 3}),
               DataError);
  EXPECT_EQ(evaluate_predictor(std::vector<double>{1, 1}, std::vector<double>{1, 3}).pearson, 0.0);
}

}  // namespace
}  // namespace simplify
