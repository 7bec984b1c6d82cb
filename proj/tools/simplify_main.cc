#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "simplify/desk_data.h"
#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/pipeline.h"
#include "simplify/tokenizer.h"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace simplify;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<int> beam;
  std::optional<double> delta;
  std::optional<int> clusters;
  std::optional<std::string> weights;
  std::optional<double> alpha;
  std::optional<std::string> loss;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required = true) {
  auto* opt = cmd->add_option("--config", f.config, "Pipeline configuration (flat JSON)");
  if (config_required) opt->required();
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--beam", f.beam, "Beam width b");
  cmd->add_option("--delta", f.delta, "Sibling-rank penalty");
  cmd->add_option("--clusters", f.clusters, "Number of k-means clusters");
  cmd->add_option("--weights", f.weights, "Rerank weights: fas, fa or f,a,s");
  cmd->add_option("--alpha", f.alpha, "Loss weight exponent");
  cmd->add_option("--loss", f.loss, "Loss mode: standard or weighted");
  cmd->add_option("--out", f.out, "Output directory");
}

PipelineConfig resolve(const CommonFlags& f) {
  PipelineConfig c = load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.beam) c.beam = *f.beam;
  if (f.delta) c.delta = *f.delta;
  if (f.clusters) c.clusters = *f.clusters;
  if (f.weights) c.weights = parse_weights(*f.weights);
  if (f.alpha) c.alpha = *f.alpha;
  if (f.loss) {
    if (*f.loss == "standard") c.loss_mode = LossMode::kStandard;
    else if (*f.loss == "weighted") c.loss_mode = LossMode::kWeighted;
    else throw ConfigError("--loss must be 'standard' or 'weighted'");
  }
  if (f.out) c.output_dir = *f.out;
  c.validate();
  return c;
}

std::vector<std::string> string_list(const json& j) { return j.get<std::vector<std::string>>(); }

int label_lexicon_cmd(const CommonFlags& f, const std::string& counts_path) {
  if (!counts_path.empty()) {
    const WordLevelCounts counts = parse_word_counts(io::read_lines(counts_path));
    std::map<std::string, double> scores;
    for (const auto& [w, l] : label_lexicon(counts)) scores[w] = l;
    const fs::path out = fs::path(f.out.value_or("out")) / "lexicon_labels.tsv";
    io::write_file(out, format_lexicon(scores));
    std::cout << "labeled " << scores.size() << " words -> " << out.string() << '\n';
    return 0;
  }
  if (f.config.empty()) throw ConfigError("label-lexicon needs --config or --counts");
  Workspace ws(resolve(f));
  const auto& labels = ws.lexicon_labels();
  std::array<int, kNumLevels> histogram{};
  for (const auto& [_, l] : labels) ++histogram[static_cast<size_t>(l)];
  std::cout << "labeled " << labels.size() << " words; per level:";
  for (int h : histogram) std::cout << ' ' << h;
  std::cout << '\n';
  return 0;
}

int train_word_cmd(const CommonFlags& f) {
  Workspace ws(resolve(f));
  const LinearModel& model = ws.word_model();
  const auto& labels = ws.lexicon_labels();
  std::vector<WordFeatures> features;
  std::vector<double> gold, predicted;
  for (const auto& [word, level] : labels) {
    features.push_back(extract_word_features(word, ws.word_counts(), ws.embeddings()));
    gold.push_back(level);
    predicted.push_back(predict_word_complexity(model, features.back()));
  }
  const RegressionReport fit = evaluate_predictor(predicted, gold);
  std::cout << "word model on " << gold.size() << " labeled words: pearson "
            << fit.pearson << ", mse " << fit.mse << '\n';
  for (BaselineKind kind : {BaselineKind::kLength, BaselineKind::kFrequency}) {
    const BaselineStats stats = fit_baseline(kind, features);
    std::vector<double> base;
    for (const auto& wf : features) base.push_back(baseline_predict(stats, wf));
    const RegressionReport r = evaluate_predictor(base, gold);
    std::cout << (kind == BaselineKind::kLength ? "length" : "frequency")
              << " baseline: pearson " << r.pearson << ", mse " << r.mse << '\n';
  }
  return 0;
}

int decode_cmd(const CommonFlags& f) {
  Workspace ws(resolve(f));
  const auto& cfg = ws.config();
  const ToyScorer& scorer = ws.scorer(cfg.loss_mode);
  const DecodeParams params = cfg.decode_params();
  std::string dump;
  for (const auto& pair : ws.split().test) {
    const auto source = scorer.vocabulary().encode(pair.complex_sentence);
    const auto hyps = diverse_beam_search(scorer, source, params);
    dump += candidate_json(pair.complex_sentence, hyps, scorer.vocabulary()) + '\n';
  }
  ws.emit("candidates.jsonl", dump);
  std::cout << "decoded " << ws.split().test.size() << " sentences -> "
            << (ws.output_dir() / "candidates.jsonl").string() << '\n';
  return 0;
}

int rerank_cmd(const CommonFlags& f, const std::string& input) {
  Workspace ws(resolve(f));
  const auto& cfg = ws.config();
  const fs::path in = input.empty() ? ws.output_dir() / "candidates.jsonl" : fs::path(input);
  ScoringModels models{&ws.language_model(), &ws.embedder(), &ws.sentence_model()};
  const ClusterConfig cluster = cfg.cluster_config();
  std::string dump;
  size_t line_no = 0;
  for (const auto& line : io::read_lines(in)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(in.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
    SentenceOutcome s;
    s.source = io::split_whitespace(j.at("source").get<std::string>());
    bool any_natural = false;
    for (const auto& c : j.at("candidates")) any_natural |= !c.value("forced", false);
    std::vector<Candidate> candidates;
    for (const auto& c : j.at("candidates")) {
      if (any_natural && c.value("forced", false)) continue;
      Candidate cand;
      cand.tokens = string_list(c.at("tokens"));
      cand.raw_logprob = c.at("logprob").get<double>();
      if (cand.tokens.empty()) continue;
      cand.vector = ws.embedder().embed(cand.tokens);
      candidates.push_back(std::move(cand));
    }
    if (candidates.empty()) {
      throw DataError(in.string() + " line " + std::to_string(line_no) + ": no usable candidates");
    }
    if (cfg.cluster_enabled) {
      std::vector<Candidate> kept;
      for (size_t i : select_representatives(candidates, cluster)) kept.push_back(candidates[i]);
      candidates = std::move(kept);
    }
    s.ranked = normalize_and_rerank(score_candidates(candidates, s.source, models), cfg.weights);
    dump += scored_json(s, 0) + '\n';
  }
  ws.emit("scored.jsonl", dump);
  std::cout << "reranked -> " << (ws.output_dir() / "scored.jsonl").string() << '\n';
  return 0;
}

int evaluate_cmd(const CommonFlags& f, const std::string& input) {
  Workspace ws(resolve(f));
  const auto& cfg = ws.config();
  const fs::path in = input.empty() ? ws.output_dir() / "scored.jsonl" : fs::path(input);
  const auto& test = ws.split().test;
  std::vector<Sentence> outputs, inputs;
  double sari_sum = 0.0, oracle_sum = 0.0, edit_sum = 0.0;
  size_t edit_count = 0;
  for (const auto& line : io::read_lines(in)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const size_t i = outputs.size();
    if (i >= test.size()) throw DataError("more scored sentences than test pairs");
    const std::vector<Sentence> refs{test[i].simple_sentence};
    std::vector<Sentence> set;
    for (const auto& c : j.at("candidates")) set.push_back(string_list(c.at("tokens")));
    const Sentence selected = set.at(j.at("selected").get<size_t>());
    double best = 0.0;
    for (const auto& c : set) {
      best = std::max(best, sari(test[i].complex_sentence, c, refs, cfg.sari_variant).overall);
    }
    sari_sum += sari(test[i].complex_sentence, selected, refs, cfg.sari_variant).overall;
    oracle_sum += best;
    if (set.size() >= 2) {
      edit_sum += avg_pairwise_edit_distance(set);
      ++edit_count;
    }
    outputs.push_back(selected);
    inputs.push_back(test[i].complex_sentence);
  }
  if (outputs.size() != test.size()) {
    throw DataError("scored file has " + std::to_string(outputs.size()) + " sentences, test split " +
                    std::to_string(test.size()));
  }
  const double n = static_cast<double>(outputs.size());
  SystemReport row{"custom", sari_sum / n, oracle_sum / n, corpus_stats(outputs, inputs),
                   edit_count ? std::optional<double>(edit_sum / static_cast<double>(edit_count))
                              : std::nullopt};
  const std::vector<SystemReport> rows{row};
  ws.emit("report.tsv", format_report_tsv(rows));
  std::cout << format_report_table(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentence simplification toolkit: complexity models, weighted loss, "
               "diverse decoding, reranking and evaluation"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string counts_path, input_path, data_dir = "data/desk", config_out = "configs/desk.json";
  uint64_t data_seed = 1;

  auto* label = app.add_subcommand("label-lexicon", "Label word complexity from leveled counts");
  add_common(label, flags, false);
  label->add_option("--counts", counts_path, "word<TAB>c0..c4 counts instead of a corpus");
  auto* train_word = app.add_subcommand("train-word", "Fit the word complexity regressor");
  add_common(train_word, flags);
  auto* train_sentence = app.add_subcommand("train-sentence", "Fit the sentence complexity CNN");
  add_common(train_sentence, flags);
  auto* train_lm = app.add_subcommand("train-lm", "Train the Kneser-Ney language model");
  add_common(train_lm, flags);
  auto* train_scorer = app.add_subcommand("train-scorer", "Train the toy sequence scorer");
  add_common(train_scorer, flags);
  auto* decode = app.add_subcommand("decode", "Diverse beam search over the test split");
  add_common(decode, flags);
  auto* rerank = app.add_subcommand("rerank", "Cluster, score and rerank decoded candidates");
  add_common(rerank, flags);
  rerank->add_option("--input", input_path, "Candidate dump (default OUT/candidates.jsonl)");
  auto* evaluate = app.add_subcommand("evaluate", "Score reranked selections");
  add_common(evaluate, flags);
  evaluate->add_option("--input", input_path, "Scored dump (default OUT/scored.jsonl)");
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage for each system variant");
  add_common(pipeline, flags);
  auto* desk = app.add_subcommand("make-desk-data", "Regenerate the bundled synthetic datasets");
  desk->add_option("--data-dir", data_dir, "Where to write the datasets");
  desk->add_option("--config-out", config_out, "Where to write the pipeline configuration");
  desk->add_option("--seed", data_seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (label->parsed()) return label_lexicon_cmd(flags, counts_path);
    if (train_word->parsed()) return train_word_cmd(flags);
    if (train_sentence->parsed()) {
      Workspace ws(resolve(flags));
      std::cout << "sentence model final training loss "
                << ws.sentence_model().final_training_loss() << '\n';
      return 0;
    }
    if (train_lm->parsed()) {
      Workspace ws(resolve(flags));
      const KNModel& lm = ws.language_model();
      std::cout << "order " << lm.order() << " model, " << lm.vocabulary().size()
                << " vocabulary entries\n";
      return 0;
    }
    if (train_scorer->parsed()) {
      Workspace ws(resolve(flags));
      ws.scorer(ws.config().loss_mode);
      std::cout << "scorer written to " << ws.output_dir().string() << '\n';
      return 0;
    }
    if (decode->parsed()) return decode_cmd(flags);
    if (rerank->parsed()) return rerank_cmd(flags, input_path);
    if (evaluate->parsed()) return evaluate_cmd(flags, input_path);
    if (pipeline->parsed()) {
      const RunManifest m = run_pipeline(resolve(flags));
      std::cout << format_report_table(m.report);
      return 0;
    }
    if (desk->parsed()) {
      for (const auto& p : desk::write_all(data_dir, config_out, data_seed)) {
        std::cout << p.string() << '\n';
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
