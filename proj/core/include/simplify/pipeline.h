#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simplify/candidates.h"
#include "simplify/complexity.h"
#include "simplify/corpus.h"
#include "simplify/decoder.h"
#include "simplify/embeddings.h"
#include "simplify/metrics.h"
#include "simplify/ngram_lm.h"
#include "simplify/sentence_cnn.h"
#include "simplify/toy_scorer.h"
#include "simplify/vocabulary.h"
#include "simplify/weighted_loss.h"

namespace simplify {

struct PipelineConfig {
  std::filesystem::path leveled_corpus;
  std::filesystem::path pairs;
  std::filesystem::path embeddings;
  std::optional<std::filesystem::path> lm_corpus;  // default: training targets
  std::optional<std::filesystem::path> scorer;     // load instead of training
  std::filesystem::path output_dir = "out";

  int beam = 100;
  double delta = 1.0;
  int max_len = 30;
  PenaltyMode penalty_mode = PenaltyMode::kAccumulate;
  int clusters = 20;
  int cluster_max_iters = 100;
  bool cluster_enabled = true;
  RerankWeights weights = RerankWeights::fas();
  double alpha = 2.0;
  LossMode loss_mode = LossMode::kWeighted;
  int lm_order = 5;
  double ridge_lambda = 1.0;
  DescentPolicy descent = DescentPolicy::kStopOnFailure;
  ToyScorerConfig scorer_config;
  CnnConfig sentence_config;
  SplitRatios split;
  SariVariant sari_variant = SariVariant::kConsistent;
  std::vector<std::string> variants;  // empty = every named variant
  uint64_t seed = 1;

  void validate() const;
  DecodeParams decode_params() const;
  ClusterConfig cluster_config() const;
};

// Flat JSON object with dotted keys; relative paths resolve against
// `base_dir`. Unknown keys and out-of-range values throw ConfigError.
PipelineConfig parse_config(std::string_view json_text,
                            const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);
RerankWeights parse_weights(std::string_view spec);

// Canonical JSON of every setting except the output directory.
std::string config_snapshot(const PipelineConfig& config);

struct Variant {
  std::string name;
  LossMode loss = LossMode::kStandard;
  bool beam = false;       // false = greedy decoding
  bool diverse = false;    // sibling-rank penalty on
  bool cluster = false;
  RerankWeights weights = RerankWeights::fa();
};

const std::vector<Variant>& named_variants();
const Variant& find_variant(std::string_view name);

struct SentenceOutcome {
  Sentence source;
  Sentence reference;
  EntityMap entities;
  std::vector<Hypothesis> decoded;        // everything the decoder returned
  std::vector<ScoredCandidate> ranked;    // final candidate set, best first
  std::vector<double> candidate_sari;     // aligned with `ranked`
  double selected_sari = 0.0;
  double oracle_sari = 0.0;
  std::optional<double> edit;             // mean pairwise distance of the set
  Sentence output() const { return ranked.front().tokens; }
};

struct VariantOutcome {
  Variant variant;
  std::vector<SentenceOutcome> sentences;
  SystemReport report;
};

struct RunManifest {
  std::string config_json;
  std::map<std::string, std::string> digests;  // file name -> SHA-256
  std::vector<std::pair<std::string, double>> stage_seconds;
  std::vector<VariantOutcome> variants;
  std::vector<SystemReport> report;
};

// Lazily trains or loads each artifact the first time it is requested and
// writes it under the output directory.
class Workspace {
 public:
  explicit Workspace(PipelineConfig config);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const PipelineConfig& config() const { return config_; }
  const std::filesystem::path& output_dir() const { return config_.output_dir; }

  const WordLevelCounts& word_counts();
  const std::map<std::string, int>& lexicon_labels();
  const EmbeddingTable& embeddings();
  std::shared_ptr<const EmbeddingTable> shared_embeddings();
  const LinearModel& word_model();
  const DatasetSplit& split();
  const Vocabulary& vocabulary();
  const ComplexityTable& complexity_table();
  const VocabWeights& vocab_weights();
  const ToyScorer& scorer(LossMode mode);
  const KNModel& language_model();
  const SentenceComplexityModel& sentence_model();
  const SentenceEmbedder& embedder();

  VariantOutcome run_variant(const Variant& variant);

  // Writes `contents` under the output directory and records its digest.
  void emit(const std::string& name, std::string_view contents);
  const std::map<std::string, std::string>& digests() const { return digests_; }
  const std::vector<std::pair<std::string, double>>& stage_seconds() const {
    return stage_seconds_;
  }

 private:
  struct State;
  template <typename F>
  auto stage(const std::string& name, F&& body);

  PipelineConfig config_;
  std::unique_ptr<State> state_;
  std::map<std::string, std::string> digests_;
  std::vector<std::pair<std::string, double>> stage_seconds_;
};

// Every stage in order for each configured variant; writes candidate and
// scored dumps, outputs, the metric report, manifest.json and timings.json.
RunManifest run_pipeline(const PipelineConfig& config);

// Candidate dump line for one decoded sentence.
std::string candidate_json(const Sentence& source,
                           std::span<const Hypothesis> hyps,
                           const Vocabulary& vocab);
// Scored dump line; `selected` indexes `ranked`.
std::string scored_json(const SentenceOutcome& outcome, size_t selected);

}  // namespace simplify
