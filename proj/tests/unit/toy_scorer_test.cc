#include <gtest/gtest.h>

#include "simplify/corpus.h"
#include "simplify/decoder.h"
#include "simplify/io.h"
#include "simplify/toy_scorer.h"
#include "simplify/weighted_loss.h"
#include "support/oracles.h"

namespace simplify {
namespace {

std::vector<AlignedPair> tiny_pairs() {
  const std::vector<std::pair<std::string, std::string>> raw = {
      {"the big house stood", "the house ."},
      {"a quick brown fox ran", "a fox ran ."},
      {"many people bought cars", "people bought cars ."},
      {"old trees fell down", "trees fell ."},
      {"the river flooded towns", "the river flooded ."},
  };
  std::vector<AlignedPair> pairs;
  for (const auto& [c, s] : raw) {
    AlignedPair p;
    p.complex_sentence = io::split_whitespace(c);
    p.simple_sentence = io::split_whitespace(s);
    pairs.push_back(p);
  }
  return pairs;
}

Vocabulary vocab_of(const std::vector<AlignedPair>& pairs) {
  std::vector<Sentence> sentences;
  for (const auto& p : pairs) {
    sentences.push_back(p.complex_sentence);
    sentences.push_back(p.simple_sentence);
  }
  return Vocabulary::build(sentences);
}

VocabWeights weights_for(const Vocabulary& vocab, double alpha) {
  ComplexityTable table;
  for (size_t i = 0; i < vocab.size(); ++i) {
    const auto& t = vocab.token(static_cast<int>(i));
    table[t] = {static_cast<double>(t.size() % 5), t.size() > 3};
  }
  return vocab_weights(vocab.tokens(), table, alpha);
}

TEST(ToyScorer, MemorizesFivePairs) {
  const auto pairs = tiny_pairs();
  const auto vocab = vocab_of(pairs);
  ToyScorerConfig config;
  config.epochs = 200;
  config.batch_size = 5;
  const auto scorer = train_toy_scorer(pairs, vocab, LossMode::kStandard, nullptr, config);
  for (const auto& p : pairs) {
    const auto h = greedy_decode(scorer, vocab.encode(p.complex_sentence), 10);
    EXPECT_EQ(vocab.decode(h.tokens), p.simple_sentence);
  }
}

TEST(ToyScorer, WeightedAlphaZeroFollowsStandardTrajectory) {
  const auto pairs = tiny_pairs();
  const auto vocab = vocab_of(pairs);
  const auto w0 = weights_for(vocab, 0.0);
  ToyScorerConfig config;
  config.epochs = 20;
  const auto standard = train_toy_scorer(pairs, vocab, LossMode::kStandard, nullptr, config);
  const auto weighted = train_toy_scorer(pairs, vocab, LossMode::kWeighted, &w0, config);
  ASSERT_EQ(standard.parameters().size(), weighted.parameters().size());
  for (size_t i = 0; i < standard.parameters().size(); ++i) {
    ASSERT_EQ(standard.parameters()[i], weighted.parameters()[i]);
  }
  for (const auto& p : pairs) {
    const auto src = vocab.encode(p.complex_sentence);
    EXPECT_EQ(greedy_decode(standard, src, 10).tokens, greedy_decode(weighted, src, 10).tokens);
  }
}

TEST(ToyScorer, GradientMatchesFiniteDifferences) {
  const auto pairs = tiny_pairs();
  const auto vocab = vocab_of(pairs);
  const auto weights = weights_for(vocab, 2.0);
  ToyScorerConfig config;
  config.embedding_dim = 3;
  config.hidden_dim = 4;
  ToyScorer scorer(vocab, config);
  scorer.initialize(3);
  const auto batch = make_examples(std::span(pairs).subspan(0, 2), vocab);
  for (auto mode : {LossMode::kStandard, LossMode::kWeighted}) {
    std::vector<double> analytic, scratch;
    scorer.loss_and_gradient(batch, mode, &weights, analytic);
    const std::vector<double> theta(scorer.parameters().begin(), scorer.parameters().end());
    const auto numeric = oracle::central_difference(
        [&](const std::vector<double>& x) {
          std::copy(x.begin(), x.end(), scorer.parameters().begin());
          return scorer.loss_and_gradient(batch, mode, &weights, scratch);
        },
        theta, 1e-5);
    std::copy(theta.begin(), theta.end(), scorer.parameters().begin());
    EXPECT_LT(oracle::relative_error(analytic, numeric), 1e-6);
  }
}

TEST(ToyScorer, DistributionsNormalizedAndShiftApplied) {
  const auto pairs = tiny_pairs();
  const auto vocab = vocab_of(pairs);
  ToyScorerConfig config;
  ToyScorer scorer(vocab, config);
  scorer.initialize(1);
  const auto src = vocab.encode(pairs[0].complex_sentence);
  const std::vector<int> prefix = {vocab.id("the")};
  const auto base = scorer.log_probs(src, prefix);
  check_distribution(base, vocab.size());
  std::vector<double> shift(vocab.size(), 0.0);
  shift[static_cast<size_t>(vocab.id("house"))] = 2.0;
  scorer.set_output_shift(shift);
  const auto shifted = scorer.log_probs(src, prefix);
  check_distribution(shifted, vocab.size());
  EXPECT_GT(shifted[static_cast<size_t>(vocab.id("house"))],
            base[static_cast<size_t>(vocab.id("house"))]);
}

TEST(ToyScorer, SerializeRoundTripAndDeterminism) {
  const auto pairs = tiny_pairs();
  const auto vocab = vocab_of(pairs);
  const auto weights = weights_for(vocab, 2.0);
  ToyScorerConfig config;
  config.epochs = 5;
  const auto a = train_toy_scorer(pairs, vocab, LossMode::kWeighted, &weights, config);
  const auto b = train_toy_scorer(pairs, vocab, LossMode::kWeighted, &weights, config);
  EXPECT_EQ(a.serialize(), b.serialize());
  const auto back = ToyScorer::deserialize(a.serialize());
  const auto src = vocab.encode(pairs[1].complex_sentence);
  EXPECT_EQ(back.log_probs(src, std::vector<int>{}), a.log_probs(src, std::vector<int>{}));
}

}  // namespace
}  // namespace simplify
