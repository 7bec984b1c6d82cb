#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "simplify/corpus.h"
#include "simplify/embeddings.h"
#include "simplify/ngram_lm.h"
#include "simplify/sentence_cnn.h"

namespace simplify {

struct Candidate {
  Sentence tokens;
  double raw_logprob = 0.0;
  SentenceVector vector;
};

struct ClusterConfig {
  int k = 20;
  int max_iters = 100;
  uint64_t seed = 1;
};

struct ClusterResult {
  std::vector<int> assignments;
  std::vector<std::vector<double>> centroids;
  // Sum of squared distances after each assignment pass.
  std::vector<double> objective_history;
  double objective = 0.0;
};

// k-means++ seeding, then Lloyd passes until the assignment stops changing.
// An emptied cluster is re-seeded with the point farthest from its centroid.
// k is reduced to the number of points.
ClusterResult kmeans_cluster(std::span<const std::vector<double>> vectors,
                             const ClusterConfig& config);

// Indices of the member nearest each non-empty centroid (ties: higher
// raw_logprob, then lower index), ordered by raw_logprob descending.
std::vector<size_t> select_representatives(std::span<const Candidate> candidates,
                                           const ClusterConfig& config);

struct RerankWeights {
  double fluency = 1.0 / 3.0;
  double adequacy = 1.0 / 3.0;
  double simplicity = 1.0 / 3.0;

  static RerankWeights fas() { return {}; }
  static RerankWeights fa() { return {0.5, 0.5, 0.0}; }
  void validate() const;
};

struct ScoredCandidate {
  size_t index = 0;  // position in the scored candidate list
  Sentence tokens;
  double raw_logprob = 0.0;
  double perplexity = 0.0;
  double cosine = 0.0;
  double complexity = 0.0;
  double fluency = 0.0;
  double adequacy = 0.0;
  double simplicity = 0.0;
  double final_score = 0.0;
};

struct ScoringModels {
  const KNModel* lm = nullptr;
  const SentenceEmbedder* embedder = nullptr;
  const SentenceComplexityModel* sentence_model = nullptr;  // optional
};

// Raw perplexity, source cosine and predicted complexity per candidate.
std::vector<ScoredCandidate> score_candidates(std::span<const Candidate> candidates,
                                              std::span<const std::string> source,
                                              const ScoringModels& models);

// Per-set min-max normalization with fluency and simplicity inverted so that
// higher is better; a constant component maps to 0.5. Sorted by final score
// descending, ties by raw_logprob.
std::vector<ScoredCandidate> normalize_and_rerank(std::vector<ScoredCandidate> scored,
                                                  const RerankWeights& weights);

// Position in `ranked` of the highest-ranked candidate whose length is
// closest to target_len + offset.
size_t match_length_select(std::span<const ScoredCandidate> ranked,
                           int target_len, int offset);

double avg_pairwise_edit_distance(std::span<const Sentence> candidates);

}  // namespace simplify
