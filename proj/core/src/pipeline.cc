#include "simplify/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <nlohmann/json.hpp>

#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/rng.h"
#include "simplify/tokenizer.h"

#ifndef SIMPLIFY_VERSION
#define SIMPLIFY_VERSION "unknown"
#endif

namespace simplify {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Seeds for each stage are derived from the single configured seed.
uint64_t stage_seed(uint64_t seed, uint64_t stage) { return mix64(seed * 31 + stage); }

std::string loss_name(LossMode m) { return m == LossMode::kWeighted ? "weighted" : "standard"; }

std::string detokenize(const Sentence& tokens) { return io::join(tokens, " "); }

}  // namespace

RerankWeights parse_weights(std::string_view spec) {
  const std::string s = to_lower(spec);
  if (s == "fas") return RerankWeights::fas();
  if (s == "fa") return RerankWeights::fa();
  const auto parts = io::split(spec, ',');
  if (parts.size() != 3) {
    throw ConfigError("weights must be 'fas', 'fa' or 'f,a,s', got '" + std::string(spec) + "'");
  }
  RerankWeights w{io::parse_double(parts[0]), io::parse_double(parts[1]),
                  io::parse_double(parts[2])};
  w.validate();
  return w;
}

void PipelineConfig::validate() const {
  auto require = [](const fs::path& p, const char* key) {
    if (p.empty()) throw ConfigError(std::string(key) + " is required");
    if (!fs::exists(p)) {
      throw ConfigError(std::string(key) + ": no such file '" + p.string() + "'");
    }
  };
  require(leveled_corpus, "paths.leveled_corpus");
  require(pairs, "paths.pairs");
  require(embeddings, "paths.embeddings");
  if (lm_corpus) require(*lm_corpus, "paths.lm_corpus");
  if (scorer) require(*scorer, "paths.scorer");
  if (beam < 1) throw ConfigError("decode.beam must be >= 1");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("decode.delta must be >= 0");
  if (max_len < 1) throw ConfigError("decode.max_len must be >= 1");
  if (clusters < 1) throw ConfigError("cluster.k must be >= 1");
  if (clusters > beam) throw ConfigError("cluster.k must not exceed decode.beam");
  if (cluster_max_iters < 1) throw ConfigError("cluster.max_iters must be >= 1");
  try {
    weights.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("rerank.weights: ") + e.what());
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("loss.alpha must be >= 0");
  if (lm_order < 1) throw ConfigError("lm.order must be >= 1");
  if (!(ridge_lambda >= 0.0)) throw ConfigError("word.ridge_lambda must be >= 0");
  for (const auto& v : variants) find_variant(v);
}

DecodeParams PipelineConfig::decode_params() const {
  DecodeParams p;
  p.beam_width = beam;
  p.delta = delta;
  p.max_len = max_len;
  p.seed = stage_seed(seed, 4);
  p.penalty_mode = penalty_mode;
  return p;
}

ClusterConfig PipelineConfig::cluster_config() const {
  return {clusters, cluster_max_iters, stage_seed(seed, 5)};
}

PipelineConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  PipelineConfig c;
  auto path = [&](const json& v) { return (base_dir / v.get<std::string>()).lexically_normal(); };
  const std::map<std::string, std::function<void(const json&)>, std::less<>> setters = {
      {"paths.leveled_corpus", [&](const json& v) { c.leveled_corpus = path(v); }},
      {"paths.pairs", [&](const json& v) { c.pairs = path(v); }},
      {"paths.embeddings", [&](const json& v) { c.embeddings = path(v); }},
      {"paths.lm_corpus", [&](const json& v) { c.lm_corpus = path(v); }},
      {"paths.scorer", [&](const json& v) { c.scorer = path(v); }},
      {"paths.output_dir", [&](const json& v) { c.output_dir = path(v); }},
      {"decode.beam", [&](const json& v) { c.beam = v.get<int>(); }},
      {"decode.delta", [&](const json& v) { c.delta = v.get<double>(); }},
      {"decode.max_len", [&](const json& v) { c.max_len = v.get<int>(); }},
      {"decode.penalty",
       [&](const json& v) {
         const auto s = v.get<std::string>();
         if (s == "accumulate") c.penalty_mode = PenaltyMode::kAccumulate;
         else if (s == "current_step") c.penalty_mode = PenaltyMode::kCurrentStep;
         else throw ConfigError("decode.penalty must be 'accumulate' or 'current_step'");
       }},
      {"cluster.k", [&](const json& v) { c.clusters = v.get<int>(); }},
      {"cluster.max_iters", [&](const json& v) { c.cluster_max_iters = v.get<int>(); }},
      {"cluster.enabled", [&](const json& v) { c.cluster_enabled = v.get<bool>(); }},
      {"rerank.weights",
       [&](const json& v) {
         if (v.is_string()) {
           c.weights = parse_weights(v.get<std::string>());
         } else if (v.is_array() && v.size() == 3) {
           c.weights = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
         } else {
           throw ConfigError("rerank.weights must be \"fas\", \"fa\" or [f, a, s]");
         }
       }},
      {"loss.alpha", [&](const json& v) { c.alpha = v.get<double>(); }},
      {"loss.mode",
       [&](const json& v) {
         const auto s = v.get<std::string>();
         if (s == "weighted") c.loss_mode = LossMode::kWeighted;
         else if (s == "standard") c.loss_mode = LossMode::kStandard;
         else throw ConfigError("loss.mode must be 'weighted' or 'standard'");
       }},
      {"lm.order", [&](const json& v) { c.lm_order = v.get<int>(); }},
      {"word.ridge_lambda", [&](const json& v) { c.ridge_lambda = v.get<double>(); }},
      {"word.descent",
       [&](const json& v) {
         const auto s = v.get<std::string>();
         if (s == "stop") c.descent = DescentPolicy::kStopOnFailure;
         else if (s == "full") c.descent = DescentPolicy::kFullScan;
         else throw ConfigError("word.descent must be 'stop' or 'full'");
       }},
      {"scorer.embedding_dim", [&](const json& v) { c.scorer_config.embedding_dim = v.get<int>(); }},
      {"scorer.hidden_dim", [&](const json& v) { c.scorer_config.hidden_dim = v.get<int>(); }},
      {"scorer.epochs", [&](const json& v) { c.scorer_config.epochs = v.get<int>(); }},
      {"scorer.batch_size", [&](const json& v) { c.scorer_config.batch_size = v.get<int>(); }},
      {"scorer.learning_rate", [&](const json& v) { c.scorer_config.learning_rate = v.get<double>(); }},
      {"scorer.reweight_at_inference",
       [&](const json& v) { c.scorer_config.reweight_at_inference = v.get<bool>(); }},
      {"sentence.filters", [&](const json& v) { c.sentence_config.filters_per_width = v.get<int>(); }},
      {"sentence.epochs", [&](const json& v) { c.sentence_config.epochs = v.get<int>(); }},
      {"sentence.batch_size", [&](const json& v) { c.sentence_config.batch_size = v.get<int>(); }},
      {"sentence.learning_rate",
       [&](const json& v) { c.sentence_config.learning_rate = v.get<double>(); }},
      {"split.train", [&](const json& v) { c.split.train = v.get<double>(); }},
      {"split.validation", [&](const json& v) { c.split.validation = v.get<double>(); }},
      {"split.test", [&](const json& v) { c.split.test = v.get<double>(); }},
      {"metrics.sari",
       [&](const json& v) {
         const auto s = v.get<std::string>();
         if (s == "consistent") c.sari_variant = SariVariant::kConsistent;
         else if (s == "released") c.sari_variant = SariVariant::kReleasedScript;
         else throw ConfigError("metrics.sari must be 'consistent' or 'released'");
       }},
      {"pipeline.variants",
       [&](const json& v) { c.variants = v.get<std::vector<std::string>>(); }},
      {"seed", [&](const json& v) { c.seed = v.get<uint64_t>(); }},
  };
  for (const auto& [key, value] : doc.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      throw ConfigError(what.rfind(key, 0) == 0 ? what : "config key '" + key + "': " + what);
    }
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  return parse_config(io::read_file(path), path.parent_path());
}

std::string config_snapshot(const PipelineConfig& c) {
  // Paths are recorded by file name so that relocated checkouts agree.
  auto name = [](const fs::path& p) { return p.filename().string(); };
  json j = json::object();
  j["paths.leveled_corpus"] = name(c.leveled_corpus);
  j["paths.pairs"] = name(c.pairs);
  j["paths.embeddings"] = name(c.embeddings);
  if (c.lm_corpus) j["paths.lm_corpus"] = name(*c.lm_corpus);
  if (c.scorer) j["paths.scorer"] = name(*c.scorer);
  j["decode.beam"] = c.beam;
  j["decode.delta"] = c.delta;
  j["decode.max_len"] = c.max_len;
  j["decode.penalty"] = c.penalty_mode == PenaltyMode::kAccumulate ? "accumulate" : "current_step";
  j["cluster.k"] = c.clusters;
  j["cluster.max_iters"] = c.cluster_max_iters;
  j["cluster.enabled"] = c.cluster_enabled;
  j["rerank.weights"] = {c.weights.fluency, c.weights.adequacy, c.weights.simplicity};
  j["loss.alpha"] = c.alpha;
  j["loss.mode"] = loss_name(c.loss_mode);
  j["lm.order"] = c.lm_order;
  j["word.ridge_lambda"] = c.ridge_lambda;
  j["word.descent"] = c.descent == DescentPolicy::kStopOnFailure ? "stop" : "full";
  j["scorer.embedding_dim"] = c.scorer_config.embedding_dim;
  j["scorer.hidden_dim"] = c.scorer_config.hidden_dim;
  j["scorer.epochs"] = c.scorer_config.epochs;
  j["scorer.batch_size"] = c.scorer_config.batch_size;
  j["scorer.learning_rate"] = c.scorer_config.learning_rate;
  j["scorer.reweight_at_inference"] = c.scorer_config.reweight_at_inference;
  j["sentence.filters"] = c.sentence_config.filters_per_width;
  j["sentence.epochs"] = c.sentence_config.epochs;
  j["sentence.batch_size"] = c.sentence_config.batch_size;
  j["sentence.learning_rate"] = c.sentence_config.learning_rate;
  j["split.train"] = c.split.train;
  j["split.validation"] = c.split.validation;
  j["split.test"] = c.split.test;
  j["metrics.sari"] = c.sari_variant == SariVariant::kConsistent ? "consistent" : "released";
  j["pipeline.variants"] = c.variants;
  j["seed"] = c.seed;
  return j.dump(2);
}

const std::vector<Variant>& named_variants() {
  static const std::vector<Variant> variants = {
      {"S2S", LossMode::kStandard, false, false, false, RerankWeights::fa()},
      {"S2S-Loss", LossMode::kWeighted, false, false, false, RerankWeights::fa()},
      {"S2S-FA", LossMode::kStandard, true, false, false, RerankWeights::fa()},
      {"S2S-Cluster-FA", LossMode::kStandard, true, false, true, RerankWeights::fa()},
      {"S2S-Diverse-FA", LossMode::kStandard, true, true, false, RerankWeights::fa()},
      {"S2S-All-FAS", LossMode::kWeighted, true, true, true, RerankWeights::fas()},
      {"S2S-All-FA", LossMode::kWeighted, true, true, true, RerankWeights::fa()},
  };
  return variants;
}

const Variant& find_variant(std::string_view name) {
  for (const auto& v : named_variants()) {
    if (v.name == name) return v;
  }
  throw ConfigError("unknown pipeline variant '" + std::string(name) + "'");
}

struct Workspace::State {
  std::optional<LeveledCorpus> leveled;
  std::optional<WordLevelCounts> counts;
  std::optional<std::map<std::string, int>> labels;
  std::shared_ptr<const EmbeddingTable> embeddings;
  std::optional<LinearModel> word_model;
  std::optional<DatasetSplit> split;
  std::optional<Vocabulary> vocab;
  std::optional<ComplexityTable> complexity;
  std::optional<VocabWeights> weights;
  std::map<LossMode, std::unique_ptr<ToyScorer>> scorers;
  std::optional<KNModel> lm;
  std::optional<SentenceComplexityModel> sentence_model;
  std::unique_ptr<MeanEmbedder> embedder;

  const LeveledCorpus& leveled_corpus(const PipelineConfig& c) {
    if (!leveled) leveled = load_leveled_corpus(c.leveled_corpus);
    return *leveled;
  }
};

Workspace::Workspace(PipelineConfig config)
    : config_(std::move(config)), state_(std::make_unique<State>()) {}

Workspace::~Workspace() = default;

template <typename F>
auto Workspace::stage(const std::string& name, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      stage_seconds_.emplace_back(
          name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    } else {
      auto result = body();
      stage_seconds_.emplace_back(
          name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      return result;
    }
  } catch (const ConfigError& e) {
    throw ConfigError("stage " + name + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError("stage " + name + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError("stage " + name + ": " + e.what());
  }
}

void Workspace::emit(const std::string& name, std::string_view contents) {
  io::write_file(config_.output_dir / name, contents);
  digests_[name] = io::sha256_hex(contents);
}

const WordLevelCounts& Workspace::word_counts() {
  if (!state_->counts) {
    stage("count-levels", [&] {
      state_->counts = count_by_level(state_->leveled_corpus(config_));
      emit("word_counts.tsv", format_word_counts(*state_->counts));
    });
  }
  return *state_->counts;
}

const std::map<std::string, int>& Workspace::lexicon_labels() {
  if (!state_->labels) {
    const auto& counts = word_counts();
    stage("label-lexicon", [&] {
      state_->labels = label_lexicon(counts, config_.descent);
      std::map<std::string, double> scores;
      for (const auto& [w, l] : *state_->labels) scores[w] = l;
      emit("lexicon_labels.tsv", format_lexicon(scores));
    });
  }
  return *state_->labels;
}

std::shared_ptr<const EmbeddingTable> Workspace::shared_embeddings() {
  if (!state_->embeddings) {
    stage("load-embeddings", [&] {
      state_->embeddings =
          std::make_shared<const EmbeddingTable>(load_embedding_table(config_.embeddings));
    });
  }
  return state_->embeddings;
}

const EmbeddingTable& Workspace::embeddings() { return *shared_embeddings(); }

const LinearModel& Workspace::word_model() {
  if (!state_->word_model) {
    const auto& labels = lexicon_labels();
    const auto& counts = word_counts();
    const auto& table = embeddings();
    stage("train-word", [&] {
      std::vector<std::vector<double>> rows;
      std::vector<double> y;
      for (const auto& [word, level] : labels) {
        rows.push_back(extract_word_features(word, counts, table).as_vector());
        y.push_back(level);
      }
      if (rows.empty()) throw DataError("no labeled words to fit");
      Eigen::MatrixXd X(static_cast<long>(rows.size()), static_cast<long>(rows[0].size()));
      for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) {
          X(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
        }
      }
      state_->word_model = fit_ridge_regression(X, y, config_.ridge_lambda);
      emit("word_model.txt", state_->word_model->serialize());
    });
  }
  return *state_->word_model;
}

const DatasetSplit& Workspace::split() {
  if (!state_->split) {
    stage("split", [&] {
      auto pairs = filter_adjacent_levels(load_aligned_pairs(config_.pairs));
      state_->split = split_corpus(std::move(pairs), config_.split, stage_seed(config_.seed, 1));
      std::string sizes = "train\t" + std::to_string(state_->split->train.size()) +
                          "\nvalidation\t" + std::to_string(state_->split->validation.size()) +
                          "\ntest\t" + std::to_string(state_->split->test.size()) + "\n";
      emit("split_sizes.tsv", sizes);
    });
  }
  return *state_->split;
}

const Vocabulary& Workspace::vocabulary() {
  if (!state_->vocab) {
    if (config_.scorer) {
      state_->vocab = scorer(config_.loss_mode).vocabulary();
    } else {
      const auto& train = split().train;
      std::vector<Sentence> sentences;
      for (const auto& p : train) {
        sentences.push_back(p.complex_sentence);
        sentences.push_back(p.simple_sentence);
      }
      state_->vocab = Vocabulary::build(sentences);
      emit("vocab.txt", state_->vocab->serialize());
    }
  }
  return *state_->vocab;
}

const ComplexityTable& Workspace::complexity_table() {
  if (!state_->complexity) {
    const auto& model = word_model();
    const auto& counts = word_counts();
    const auto& table = embeddings();
    const auto& vocab = vocabulary();
    stage("word-complexity", [&] {
      ComplexityTable out;
      std::map<std::string, double> scores;
      for (int id = 0; id < static_cast<int>(vocab.size()); ++id) {
        const std::string& token = vocab.token(id);
        const WordFeatures f = counts.find(token)
                                   ? extract_word_features(token, counts, table)
                                   : extract_word_features(token, 0, table);
        const double score = predict_word_complexity(model, f);
        const bool content = !Vocabulary::is_special(id) && is_content_word(token);
        out[token] = {score, content};
        scores[token] = score;
      }
      state_->complexity = std::move(out);
      emit("word_complexity.tsv", format_lexicon(scores));
    });
  }
  return *state_->complexity;
}

const VocabWeights& Workspace::vocab_weights() {
  if (!state_->weights) {
    const auto& table = complexity_table();
    const auto& vocab = vocabulary();
    stage("vocab-weights", [&] {
      state_->weights = simplify::vocab_weights(vocab.tokens(), table, config_.alpha);
      emit("vocab_weights.tsv", format_weight_table(*state_->weights));
    });
  }
  return *state_->weights;
}

const ToyScorer& Workspace::scorer(LossMode mode) {
  auto& slot = state_->scorers[mode];
  if (!slot) {
    if (config_.scorer) {
      stage("load-scorer", [&] {
        slot = std::make_unique<ToyScorer>(ToyScorer::deserialize(io::read_file(*config_.scorer)));
      });
      return *slot;
    }
    const auto& train = split().train;
    const auto& vocab = vocabulary();
    const VocabWeights* weights = mode == LossMode::kWeighted ? &vocab_weights() : nullptr;
    stage("train-scorer-" + loss_name(mode), [&] {
      ToyScorerConfig sc = config_.scorer_config;
      sc.seed = stage_seed(config_.seed, 2);
      slot = std::make_unique<ToyScorer>(train_toy_scorer(train, vocab, mode, weights, sc));
      emit("scorer_" + loss_name(mode) + ".txt", slot->serialize());
    });
  }
  return *slot;
}

const KNModel& Workspace::language_model() {
  if (!state_->lm) {
    std::vector<Sentence> sentences;
    if (config_.lm_corpus) {
      for (const auto& line : io::read_lines(*config_.lm_corpus)) {
        if (line.empty()) continue;
        sentences.push_back(prepare_sentence(line).surfaces());
      }
    } else {
      for (const auto& p : split().train) sentences.push_back(p.simple_sentence);
    }
    stage("train-lm", [&] {
      state_->lm = train_kn_model(sentences, config_.lm_order);
      emit("kn_model.txt", state_->lm->serialize());
    });
  }
  return *state_->lm;
}

const SentenceComplexityModel& Workspace::sentence_model() {
  if (!state_->sentence_model) {
    auto table = shared_embeddings();
    const auto& corpus = state_->leveled_corpus(config_);
    stage("train-sentence", [&] {
      std::vector<LabeledSentence> data;
      for (const auto& doc : corpus.documents) {
        for (const auto& s : doc.sentences) data.push_back({s, static_cast<double>(doc.level)});
      }
      CnnConfig cc = config_.sentence_config;
      cc.seed = stage_seed(config_.seed, 3);
      state_->sentence_model = fit_sentence_cnn(data, table, cc);
      emit("sentence_model.txt", state_->sentence_model->serialize());
    });
  }
  return *state_->sentence_model;
}

const SentenceEmbedder& Workspace::embedder() {
  if (!state_->embedder) {
    state_->embedder = std::make_unique<MeanEmbedder>(embeddings(), Weighting::kUniform);
  }
  return *state_->embedder;
}

VariantOutcome Workspace::run_variant(const Variant& variant) {
  const ToyScorer& model = scorer(variant.loss);
  const auto& vocab = model.vocabulary();
  const auto& test = split().test;
  ScoringModels models{&language_model(), &embedder(), &sentence_model()};

  VariantOutcome out;
  out.variant = variant;
  stage("decode-rerank-" + variant.name, [&] {
    DecodeParams params = config_.decode_params();
    if (!variant.diverse) params.delta = 0.0;
    const ClusterConfig cluster = config_.cluster_config();

    for (const auto& pair : test) {
      SentenceOutcome s;
      s.source = pair.complex_sentence;
      s.reference = pair.simple_sentence;
      s.entities = pair.entities;
      const std::vector<int> source = vocab.encode(pair.complex_sentence);
      if (variant.beam) {
        s.decoded = diverse_beam_search(model, source, params);
      } else {
        s.decoded = {greedy_decode(model, source, config_.max_len)};
      }
      // Truncated hypotheses only compete when nothing finished naturally.
      const bool any_natural = std::any_of(s.decoded.begin(), s.decoded.end(),
                                           [](const Hypothesis& h) { return !h.forced_eos; });
      std::vector<Candidate> candidates;
      for (const auto& h : s.decoded) {
        if (any_natural && h.forced_eos) continue;
        Candidate c;
        c.tokens = vocab.decode(h.tokens);
        if (c.tokens.empty()) continue;
        c.raw_logprob = h.raw_logprob;
        c.vector = embedder().embed(c.tokens);
        candidates.push_back(std::move(c));
      }
      if (candidates.empty()) {
        // Only the end marker was produced; fall back to copying the source.
        Candidate c;
        c.tokens = s.source;
        c.raw_logprob = -HUGE_VAL;
        c.vector = embedder().embed(c.tokens);
        candidates.push_back(std::move(c));
      }
      if (variant.cluster && config_.cluster_enabled) {
        std::vector<Candidate> kept;
        for (size_t i : select_representatives(candidates, cluster)) kept.push_back(candidates[i]);
        candidates = std::move(kept);
      }
      s.ranked = normalize_and_rerank(score_candidates(candidates, s.source, models),
                                      variant.weights);
      const std::vector<Sentence> refs{s.reference};
      for (const auto& c : s.ranked) {
        s.candidate_sari.push_back(sari(s.source, c.tokens, refs, config_.sari_variant).overall);
      }
      s.selected_sari = s.candidate_sari.front();
      s.oracle_sari = *std::max_element(s.candidate_sari.begin(), s.candidate_sari.end());
      if (s.ranked.size() >= 2) {
        std::vector<Sentence> set;
        for (const auto& c : s.ranked) set.push_back(c.tokens);
        s.edit = avg_pairwise_edit_distance(set);
      }
      out.sentences.push_back(std::move(s));
    }
  });

  std::vector<Sentence> outputs, inputs;
  double sari_sum = 0.0, oracle_sum = 0.0, edit_sum = 0.0;
  size_t edit_count = 0;
  std::string candidate_dump, scored_dump, output_text;
  for (const auto& s : out.sentences) {
    outputs.push_back(s.output());
    inputs.push_back(s.source);
    sari_sum += s.selected_sari;
    oracle_sum += s.oracle_sari;
    if (s.edit) {
      edit_sum += *s.edit;
      ++edit_count;
    }
    candidate_dump += candidate_json(s.source, s.decoded, vocab) + '\n';
    scored_dump += scored_json(s, 0) + '\n';
    output_text += detokenize(demask(s.output(), s.entities)) + '\n';
  }
  const double n = static_cast<double>(out.sentences.size());
  out.report.system = variant.name;
  out.report.sari = sari_sum / n;
  if (variant.beam) out.report.oracle_sari = oracle_sum / n;
  out.report.stats = corpus_stats(outputs, inputs);
  if (edit_count > 0) out.report.edit = edit_sum / static_cast<double>(edit_count);
  emit("candidates_" + variant.name + ".jsonl", candidate_dump);
  emit("scored_" + variant.name + ".jsonl", scored_dump);
  emit("outputs_" + variant.name + ".txt", output_text);
  return out;
}

std::string candidate_json(const Sentence& source, std::span<const Hypothesis> hyps,
                           const Vocabulary& vocab) {
  json j;
  j["source"] = detokenize(source);
  j["candidates"] = json::array();
  for (const auto& h : hyps) {
    json row = {{"tokens", vocab.decode(h.tokens)}, {"logprob", h.raw_logprob}};
    if (h.forced_eos) row["forced"] = true;
    j["candidates"].push_back(std::move(row));
  }
  return j.dump();
}

std::string scored_json(const SentenceOutcome& s, size_t selected) {
  json j;
  j["source"] = detokenize(s.source);
  j["candidates"] = json::array();
  for (size_t i = 0; i < s.ranked.size(); ++i) {
    const auto& c = s.ranked[i];
    json row = {{"tokens", c.tokens},         {"logprob", c.raw_logprob},
                {"ppl", c.perplexity},        {"cos", c.cosine},
                {"complexity", c.complexity}, {"final", c.final_score}};
    if (i < s.candidate_sari.size()) row["sari"] = s.candidate_sari[i];
    j["candidates"].push_back(std::move(row));
  }
  j["selected"] = selected;
  j["selected_sari"] = s.selected_sari;
  j["oracle_sari"] = s.oracle_sari;
  return j.dump();
}

RunManifest run_pipeline(const PipelineConfig& config) {
  config.validate();
  Workspace ws(config);
  RunManifest manifest;
  manifest.config_json = config_snapshot(config);

  ws.lexicon_labels();
  ws.word_model();
  ws.split();
  ws.vocab_weights();
  ws.language_model();
  ws.sentence_model();

  std::vector<std::string> names = config.variants;
  if (names.empty()) {
    for (const auto& v : named_variants()) names.push_back(v.name);
  }

  const auto& test = ws.split().test;
  std::vector<Sentence> inputs, references;
  std::vector<SystemReport> rows;
  {
    double sari_sum = 0.0;
    for (const auto& p : test) {
      inputs.push_back(p.complex_sentence);
      references.push_back(p.simple_sentence);
      const std::vector<Sentence> refs{p.simple_sentence};
      sari_sum += sari(p.complex_sentence, p.complex_sentence, refs, config.sari_variant).overall;
    }
    SystemReport complex_row{"Complex", sari_sum / static_cast<double>(test.size()), std::nullopt,
                             corpus_stats(inputs, inputs), std::nullopt};
    SystemReport reference_row{"Reference", 100.0, std::nullopt, corpus_stats(references, inputs),
                               std::nullopt};
    rows.push_back(complex_row);
    rows.push_back(reference_row);
  }
  for (const auto& name : names) {
    manifest.variants.push_back(ws.run_variant(find_variant(name)));
    rows.push_back(manifest.variants.back().report);
  }
  manifest.report = rows;
  ws.emit("report.tsv", format_report_tsv(rows));
  ws.emit("report.txt", format_report_table(rows));

  json m;
  m["config"] = json::parse(manifest.config_json);
  m["versions"] = {{"simplify", SIMPLIFY_VERSION},
                   {"kn_model", "simplify-kn v1"},
                   {"toy_scorer", "simplify-toy-scorer v1"},
                   {"sentence_cnn", "simplify-sentence-cnn v1"},
                   {"linear_model", "simplify-linear-model v1"}};
  m["seeds"] = {{"seed", config.seed},
                {"split", stage_seed(config.seed, 1)},
                {"scorer", stage_seed(config.seed, 2)},
                {"sentence", stage_seed(config.seed, 3)},
                {"decode", stage_seed(config.seed, 4)},
                {"cluster", stage_seed(config.seed, 5)}};
  m["outputs"] = ws.digests();
  manifest.digests = ws.digests();
  io::write_file(config.output_dir / "manifest.json", m.dump(2) + "\n");

  manifest.stage_seconds = ws.stage_seconds();
  json t = json::array();
  for (const auto& [name, seconds] : manifest.stage_seconds) {
    t.push_back({{"stage", name}, {"seconds", seconds}});
  }
  io::write_file(config.output_dir / "timings.json", t.dump(2) + "\n");
  return manifest;
}

}  // namespace simplify
