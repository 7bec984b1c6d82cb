// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Optional argument: a substring selecting criteria by name.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "simplify/candidates.h"
#include "simplify/complexity.h"
#include "simplify/corpus.h"
#include "simplify/decoder.h"
#include "simplify/embeddings.h"
#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/metrics.h"
#include "simplify/ngram_lm.h"
#include "simplify/pipeline.h"
#include "simplify/rng.h"
#include "simplify/sentence_cnn.h"
#include "simplify/tokenizer.h"
#include "simplify/toy_scorer.h"
#include "simplify/vocabulary.h"
#include "simplify/weighted_loss.h"
#include "support/oracles.h"

namespace fs = std::filesystem;
using namespace simplify;

namespace {

const fs::path kData = SIMPLIFY_DATA_DIR;
const fs::path kConfig = SIMPLIFY_CONFIG_PATH;
const fs::path kWork = SIMPLIFY_WORK_DIR;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Sentence strip_eos(const Hypothesis& h, int eos) {
  Sentence out;
  for (int t : h.tokens) {
    if (t != eos) out.push_back(std::to_string(t));
  }
  return out;
}

Verdict beam_oracle() {
  const auto start = std::chrono::steady_clock::now();
  int agree = 0;
  for (int i = 0; i < 50; ++i) {
    const size_t vocab = 2 + static_cast<size_t>(i % 3);
    const int max_len = 1 + (i / 3) % 5;
    RandomTableScorer scorer(vocab, mix64(1000 + static_cast<uint64_t>(i)));
    DecodeParams p;
    p.delta = 0.0;
    p.max_len = max_len;
    p.beam_width = static_cast<int>(std::pow(vocab, max_len));
    const auto beam = diverse_beam_search(scorer, {}, p);
    const auto exact = exhaustive_decode(scorer, {}, max_len);
    if (beam.front().tokens == exact.front().tokens &&
        beam.front().raw_logprob == exact.front().raw_logprob) {
      ++agree;
    }
  }
  const double elapsed = seconds_since(start);
  return {agree == 50 && elapsed < 30.0,
          fmt("%d/50 top-1 identical to exhaustive search, %.2f s", agree, elapsed)};
}

Verdict diversity_identity() {
  int identical = 0, total = 0;
  for (int i = 0; i < 100; ++i) {
    const size_t vocab = 3 + static_cast<size_t>(i % 6);
    RandomTableScorer scorer(vocab, mix64(2000 + static_cast<uint64_t>(i)));
    for (int b : {1, 2, 4}) {
      DecodeParams p;
      p.delta = 0.0;
      p.beam_width = b;
      p.max_len = 3 + i % 6;
      const auto diverse = diverse_beam_search(scorer, {}, p);
      const auto plain = beam_search(scorer, {}, b, p.max_len);
      bool same = diverse.size() == plain.size();
      for (size_t k = 0; same && k < diverse.size(); ++k) {
        same = diverse[k].tokens == plain[k].tokens &&
               diverse[k].raw_logprob == plain[k].raw_logprob &&
               diverse[k].selection_score == plain[k].selection_score;
      }
      identical += same;
      ++total;
    }
  }
  return {identical == total, fmt("%d/%d runs identical", identical, total)};
}

struct DiversityCurve {
  std::vector<double> mean;
  int non_monotone = 0;
};

DiversityCurve diversity_curve(PenaltyMode mode) {
  const std::vector<double> deltas = {0.0, 0.5, 1.0};
  DiversityCurve curve{std::vector<double>(deltas.size(), 0.0), 0};
  for (int seed = 0; seed < 20; ++seed) {
    RandomTableScorer scorer(10, mix64(3000 + static_cast<uint64_t>(seed)));
    std::vector<double> dist;
    for (double delta : deltas) {
      DecodeParams p;
      p.beam_width = 10;
      p.delta = delta;
      p.max_len = 10;
      p.penalty_mode = mode;
      std::vector<Sentence> cands;
      for (const auto& h : diverse_beam_search(scorer, {}, p)) {
        cands.push_back(strip_eos(h, scorer.eos_id()));
      }
      dist.push_back(avg_pairwise_edit_distance(cands));
    }
    for (size_t k = 0; k < deltas.size(); ++k) curve.mean[k] += dist[k] / 20.0;
    if (dist[1] < dist[0] || dist[2] < dist[1]) ++curve.non_monotone;
  }
  return curve;
}

Verdict diversity_direction() {
  const auto acc = diversity_curve(PenaltyMode::kAccumulate);
  const auto cur = diversity_curve(PenaltyMode::kCurrentStep);
  const bool ok = acc.mean[0] <= acc.mean[1] && acc.mean[1] <= acc.mean[2] &&
                  acc.non_monotone <= 1;
  return {ok, fmt("mean edit distance %.3f / %.3f / %.3f at delta 0 / 0.5 / 1.0, "
                  "%d/20 non-monotone seeds (current-step penalty: %.3f / %.3f / %.3f, %d/20)",
                  acc.mean[0], acc.mean[1], acc.mean[2], acc.non_monotone, cur.mean[0],
                  cur.mean[1], cur.mean[2], cur.non_monotone)};
}

VocabWeights random_weights(Rng& rng, size_t dim, double alpha) {
  std::vector<std::string> vocab;
  ComplexityTable table;
  for (size_t v = 0; v < dim; ++v) {
    vocab.push_back("w" + std::to_string(v));
    table[vocab.back()] = {rng.uniform(0.0, 4.0), rng.uniform() < 0.7};
  }
  return vocab_weights(vocab, table, alpha);
}

Verdict loss_transform() {
  Rng rng(4);
  double identity_gap = 0.0, grad_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> logits(10);
    for (auto& z : logits) z = rng.normal(0.0, 2.0);
    const size_t target = rng.index(10);
    const auto zero = random_weights(rng, 10, 0.0);
    const double ce = cross_entropy(logits, target).loss;
    for (auto mode : {Renormalization::kRenormalized, Renormalization::kUnnormalized}) {
      identity_gap = std::max(
          identity_gap, std::abs(weighted_cross_entropy(logits, target, zero, mode).loss - ce));
    }
    const auto weights = random_weights(rng, 10, rng.uniform(0.0, 3.0));
    const auto analytic = weighted_cross_entropy(logits, target, weights).gradient_wrt_logits;
    const auto numeric = oracle::central_difference(
        [&](const std::vector<double>& z) {
          return weighted_cross_entropy(z, target, weights).loss;
        },
        logits, 1e-5);
    grad_err = std::max(grad_err, oracle::relative_error(analytic, numeric));
  }
  return {identity_gap <= 1e-9 && grad_err <= 1e-6,
          fmt("alpha=0 gap %.2e, max gradient relative error %.2e", identity_gap, grad_err)};
}

double mean_output_complexity(const ToyScorer& scorer, const std::vector<AlignedPair>& test,
                              const ComplexityTable& table) {
  double sum = 0.0;
  size_t n = 0;
  const auto& vocab = scorer.vocabulary();
  for (const auto& pair : test) {
    const auto h = greedy_decode(scorer, vocab.encode(pair.complex_sentence), 20);
    for (const auto& token : vocab.decode(h.tokens)) {
      auto it = table.find(token);
      if (it != table.end() && it->second.is_content) {
        sum += it->second.score;
        ++n;
      }
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

Verdict loss_direction() {
  const auto start = std::chrono::steady_clock::now();
  const auto pairs = load_aligned_pairs(kData / "synonym_pairs.tsv");
  const auto scores = parse_lexicon(io::read_lines(kData / "synonym_complexity.tsv"));
  int no_worse = 0, strict = 0;
  std::string per_seed;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto split = split_corpus(pairs, {0.8, 0.1, 0.1}, seed);
    std::vector<Sentence> sentences;
    for (const auto& p : split.train) {
      sentences.push_back(p.complex_sentence);
      sentences.push_back(p.simple_sentence);
    }
    const auto vocab = Vocabulary::build(sentences);
    ComplexityTable table;
    for (const auto& token : vocab.tokens()) {
      auto it = scores.find(token);
      table[token] = it == scores.end() ? ComplexityEntry{0.0, false}
                                        : ComplexityEntry{it->second, true};
    }
    const auto weights = vocab_weights(vocab.tokens(), table, 2.0);
    ToyScorerConfig config;
    config.seed = seed;
    const auto ce = train_toy_scorer(split.train, vocab, LossMode::kStandard, nullptr, config);
    const auto weighted =
        train_toy_scorer(split.train, vocab, LossMode::kWeighted, &weights, config);
    const double c_ce = mean_output_complexity(ce, split.test, table);
    const double c_w = mean_output_complexity(weighted, split.test, table);
    no_worse += c_w <= c_ce;
    strict += c_w < c_ce;
    per_seed += fmt(" %.2f/%.2f", c_w, c_ce);
  }
  const double elapsed = seconds_since(start);
  return {no_worse >= 8 && elapsed < 300.0,
          fmt("weighted <= CE in %d/10 seeds (%d strictly lower), %.1f s; weighted/CE:",
              no_worse, strict, elapsed) + per_seed};
}

Verdict complexity_ordering() {
  const auto counts = parse_word_counts(io::read_lines(kData / "lexicon_counts.tsv"));
  const auto embeddings = load_embedding_table(kData / "lexicon_embeddings.txt");
  const auto labels = label_lexicon(counts);
  std::vector<std::string> words;
  for (const auto& [w, l] : labels) words.push_back(w);
  Rng rng(6);
  rng.shuffle(std::span<std::string>(words));
  const size_t n_train = words.size() * 4 / 5;
  std::vector<WordFeatures> train_f, test_f;
  std::vector<double> train_y, test_y;
  for (size_t i = 0; i < words.size(); ++i) {
    auto f = extract_word_features(words[i], counts, embeddings);
    const double y = labels.at(words[i]);
    if (i < n_train) {
      train_f.push_back(std::move(f));
      train_y.push_back(y);
    } else {
      test_f.push_back(std::move(f));
      test_y.push_back(y);
    }
  }
  Eigen::MatrixXd x(static_cast<long>(train_f.size()),
                    static_cast<long>(train_f[0].as_vector().size()));
  for (size_t i = 0; i < train_f.size(); ++i) {
    const auto v = train_f[i].as_vector();
    for (size_t j = 0; j < v.size(); ++j) x(static_cast<long>(i), static_cast<long>(j)) = v[j];
  }
  const auto model = fit_ridge_regression(x, train_y, 1.0);
  const auto length = fit_baseline(BaselineKind::kLength, train_f);
  const auto freq = fit_baseline(BaselineKind::kFrequency, train_f);
  std::vector<double> p_model, p_len, p_freq;
  for (const auto& f : test_f) {
    p_model.push_back(predict_word_complexity(model, f));
    p_len.push_back(baseline_predict(length, f));
    p_freq.push_back(baseline_predict(freq, f));
  }
  const double r_model = evaluate_predictor(p_model, test_y).pearson;
  const double r_len = evaluate_predictor(p_len, test_y).pearson;
  const double r_freq = evaluate_predictor(p_freq, test_y).pearson;
  return {r_model >= r_len + 0.05 && std::abs(r_freq) < r_len,
          fmt("%zu words, held-out Pearson LinReg %.3f, length %.3f, frequency %.3f",
              words.size(), r_model, r_len, r_freq)};
}

Verdict sentence_cnn() {
  auto embeddings = std::make_shared<const EmbeddingTable>(
      load_embedding_table(kData / "lexicon_embeddings.txt"));
  const auto corpus = load_leveled_corpus(kData / "leveled_sentences.tsv");
  std::vector<LabeledSentence> all;
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.sentences) all.push_back({s, static_cast<double>(doc.level)});
  }

  CnnConfig small;
  small.widths = {2, 3};
  small.filters_per_width = 3;
  SentenceComplexityModel probe(embeddings, small);
  probe.initialize(2.0);
  const std::vector<LabeledSentence> batch(all.begin(), all.begin() + 4);
  std::vector<double> analytic;
  probe.loss_and_gradient(batch, analytic);
  const std::vector<double> theta(probe.parameters().begin(), probe.parameters().end());
  std::vector<double> scratch;
  const auto numeric = oracle::central_difference(
      [&](const std::vector<double>& x) {
        std::copy(x.begin(), x.end(), probe.parameters().begin());
        return probe.loss_and_gradient(batch, scratch);
      },
      theta, 1e-5);
  const double grad_err = oracle::relative_error(analytic, numeric);

  const size_t n_train = all.size() * 4 / 5;
  const std::vector<LabeledSentence> train(all.begin(), all.begin() + static_cast<long>(n_train));
  CnnConfig config;
  config.epochs = 10;
  const auto model = fit_sentence_cnn(train, embeddings, config);
  double min_len = 1e9, max_len = 0.0;
  for (const auto& s : train) {
    min_len = std::min(min_len, static_cast<double>(s.tokens.size()));
    max_len = std::max(max_len, static_cast<double>(s.tokens.size()));
  }
  std::vector<double> gold, p_model, p_len;
  for (size_t i = n_train; i < all.size(); ++i) {
    gold.push_back(all[i].level);
    p_model.push_back(predict_sentence_complexity(model, all[i].tokens));
    p_len.push_back(minmax_to_levels(static_cast<double>(all[i].tokens.size()), min_len, max_len));
  }
  const double r_model = evaluate_predictor(p_model, gold).pearson;
  const double r_len = evaluate_predictor(p_len, gold).pearson;
  return {grad_err < 1e-4 && r_model > r_len,
          fmt("gradient relative error %.2e; held-out Pearson CNN %.3f, length %.3f",
              grad_err, r_model, r_len)};
}

Verdict lm_normalization() {
  std::vector<Sentence> sentences;
  for (const auto& line : io::read_lines(kData / "lm_corpus.txt")) {
    if (!line.empty()) sentences.push_back(prepare_sentence(line).surfaces());
  }
  Rng rng(8);
  double worst = 0.0;
  for (int order = 1; order <= 5; ++order) {
    const auto model = train_kn_model(sentences, order);
    auto vocab = model.vocabulary();
    std::vector<std::string> pool = vocab;
    pool.push_back(std::string(KNModel::kBos));
    pool.push_back("zyzzyva");
    for (int c = 0; c < 100; ++c) {
      Sentence context;
      const size_t len = rng.index(static_cast<uint64_t>(order) + 1);
      if (c % 2 == 0 && !sentences.empty()) {
        // Half the contexts come from real text so that high orders are hit.
        const auto& s = sentences[rng.index(sentences.size())];
        const size_t end = rng.index(s.size() + 1);
        for (size_t k = end >= len ? end - len : 0; k < end; ++k) context.push_back(s[k]);
      } else {
        for (size_t k = 0; k < len; ++k) context.push_back(pool[rng.index(pool.size())]);
      }
      double sum = 0.0;
      for (const auto& v : vocab) sum += std::exp(model.logprob(context, v));
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  int exact = 0, total = 0;
  double generic_gap = 0.0;
  for (size_t size : {3, 4, 7, 10, 57, 1000}) {
    Sentence tokens;
    for (size_t k = 0; k + 2 < size; ++k) tokens.push_back("t" + std::to_string(k));
    const auto uniform = KNModel::uniform(tokens);
    const double v = static_cast<double>(uniform.vocabulary().size());
    for (int trial = 0; trial < 5; ++trial) {
      Sentence s;
      for (size_t k = 0; k <= rng.index(8); ++k) s.push_back(tokens[rng.index(tokens.size())]);
      exact += sentence_perplexity(uniform, s) == v;
      ++total;
      double lp = 0.0;
      Sentence ctx;
      for (const auto& t : s) lp += uniform.logprob(ctx, t);
      lp += uniform.logprob(ctx, KNModel::kEos);
      const double generic = std::exp(-lp / static_cast<double>(s.size() + 1));
      generic_gap = std::max(generic_gap, std::abs(generic - v) / v);
    }
  }
  return {worst <= 1e-6 && exact == total,
          fmt("max |sum p - 1| %.2e over orders 1..5; uniform perplexity exact %d/%d "
              "(log-sum path within %.1e relative)",
              worst, exact, total, generic_gap)};
}

Verdict sari_suite() {
  struct Case {
    const char* source;
    const char* candidate;
    std::vector<const char*> refs;
    double released;
    double consistent;
  };
  const std::vector<Case> cases = {
      {"a b c", "a c", {"a c"}, 41.6666666667, 100.0000000000},
      {"a b c", "a b c", {"a c"}, 6.6666666667, 48.3333333333},
      {"a b c", "a c", {"a b c"}, 6.6666666667, 48.3333333333},
      {"a b c d", "a b c d", {"a b c d"}, 33.3333333333, 100.0000000000},
      {"a b c", "x y", {"a x"}, 27.7777777778, 77.7777777778},
      {"a a b", "a b", {"a b"}, 33.3333333333, 100.0000000000},
      {"the cat sat", "the cat", {"the cat sat", "a cat"}, 22.5490196078, 55.8823529412},
      {"he is very big", "he is big", {"he is big", "he is large"}, 60.3535353535, 85.3535353535},
      {"a b c d e", "e d c b a", {"a b c d e"}, 8.3333333333, 25.0000000000},
      {"x y z", "x y z w", {"x y w", "x z w"}, 22.5000000000, 39.1666666667},
      {"one two", "one three", {"one three", "one two", "four"}, 29.7619047619, 79.7619047619},
      {"p q r s", "q r", {"p q", "r s"}, 29.1666666667, 79.1666666667},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    std::vector<Sentence> refs;
    for (const char* r : c.refs) refs.push_back(io::split_whitespace(r));
    const auto s = io::split_whitespace(c.source);
    const auto h = io::split_whitespace(c.candidate);
    worst = std::max(worst, std::abs(sari(s, h, refs, SariVariant::kReleasedScript).overall -
                                     c.released));
    worst = std::max(worst, std::abs(sari(s, h, refs, SariVariant::kConsistent).overall -
                                     c.consistent));
  }
  int perfect = 0, total = 0;
  for (const auto& p : load_aligned_pairs(kData / "pairs.tsv")) {
    const std::vector<Sentence> refs = {p.simple_sentence};
    perfect += sari(p.complex_sentence, p.simple_sentence, refs).overall == 100.0;
    ++total;
  }
  return {worst <= 1e-4 && perfect == total,
          fmt("candidate = reference gives 100 in %d/%d pairs; micro-suite max deviation %.1e",
              perfect, total, worst)};
}

Verdict ter_suite() {
  std::vector<std::pair<Sentence, Sentence>> pairs;
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  std::vector<Sentence> short_seqs = {{}};
  for (size_t len = 1; len <= 4; ++len) {
    std::vector<Sentence> next;
    for (const auto& s : short_seqs) {
      if (s.size() != len - 1) continue;
      for (const auto& a : alphabet) {
        auto t = s;
        t.push_back(a);
        next.push_back(std::move(t));
      }
    }
    short_seqs.insert(short_seqs.end(), next.begin(), next.end());
  }
  std::erase_if(short_seqs, [](const Sentence& s) { return s.empty(); });
  for (const auto& h : short_seqs) {
    for (const auto& r : short_seqs) pairs.emplace_back(h, r);
  }
  Rng rng(10);
  const std::vector<std::string> wide = {"a", "b", "c", "d", "e"};
  for (int i = 0; i < 3000; ++i) {
    Sentence h, r;
    const size_t hl = 1 + rng.index(6), rl = 1 + rng.index(6);
    for (size_t k = 0; k < hl; ++k) h.push_back(wide[rng.index(wide.size())]);
    for (size_t k = 0; k < rl; ++k) r.push_back(wide[rng.index(wide.size())]);
    pairs.emplace_back(h, r);
  }
  for (const auto& p : load_aligned_pairs(kData / "pairs.tsv")) {
    // Six-token windows of real sentences, plus whole sentences when short.
    Sentence h(p.simple_sentence.begin(),
               p.simple_sentence.begin() + static_cast<long>(std::min<size_t>(6, p.simple_sentence.size())));
    Sentence r(p.complex_sentence.begin(),
               p.complex_sentence.begin() + static_cast<long>(std::min<size_t>(6, p.complex_sentence.size())));
    pairs.emplace_back(h, r);
  }
  size_t agree = 0, within_one = 0, identity_zero = 0, identities = 0;
  for (const auto& [h, r] : pairs) {
    const size_t greedy = ter(h, r).edits;
    const size_t best = oracle::min_ter_edits(h, r);
    agree += greedy == best;
    within_one += greedy >= best && greedy <= best + 1;
  }
  for (const auto& s : short_seqs) {
    identity_zero += ter(s, s).score == 0.0 && ter(s, s).edits == 0;
    ++identities;
  }
  return {within_one == pairs.size() && identity_zero == identities,
          fmt("%zu pairs: %zu equal to brute force, %zu within +1; identity 0 in %zu/%zu",
              pairs.size(), agree, within_one, identity_zero, identities)};
}

struct PipelineRun {
  RunManifest manifest;
  double seconds = 0.0;
};

PipelineRun run_desk(const fs::path& out) {
  auto config = load_config(kConfig);
  config.output_dir = out;
  fs::remove_all(out);
  const auto start = std::chrono::steady_clock::now();
  PipelineRun run{run_pipeline(config), 0.0};
  run.seconds = seconds_since(start);
  return run;
}

const VariantOutcome& variant(const RunManifest& m, const std::string& name) {
  for (const auto& v : m.variants) {
    if (v.variant.name == name) return v;
  }
  throw DataError("variant missing from run: " + name);
}

PipelineRun& first_run() {
  static PipelineRun run = run_desk(kWork / "run_a");
  return run;
}

Verdict pipeline_direction() {
  const auto& run = first_run();
  const double all_fa = variant(run.manifest, "S2S-All-FA").report.stats.avg_length;
  const double greedy = variant(run.manifest, "S2S").report.stats.avg_length;
  return {all_fa < greedy && run.seconds < 300.0,
          fmt("mean output length S2S-All-FA %.2f vs S2S %.2f over %zu test sentences, "
              "run %.1f s",
              all_fa, greedy, variant(run.manifest, "S2S").sentences.size(), run.seconds)};
}

Verdict oracle_dominance() {
  const auto& run = first_run();
  bool all_ok = true;
  std::string detail;
  double target_share = 0.0;
  for (const auto& v : run.manifest.variants) {
    size_t dominated = 0, strict = 0;
    for (const auto& s : v.sentences) {
      dominated += s.oracle_sari >= s.selected_sari;
      strict += s.oracle_sari > s.selected_sari;
    }
    all_ok = all_ok && dominated == v.sentences.size();
    const double share = static_cast<double>(strict) / static_cast<double>(v.sentences.size());
    if (v.variant.name == "S2S-All-FA") target_share = share;
    if (v.variant.beam) detail += fmt(" %s %.0f%%", v.variant.name.c_str(), 100.0 * share);
  }
  return {all_ok && target_share >= 0.10,
          "oracle >= selected for every sentence: " + std::string(all_ok ? "yes" : "no") +
              "; strictly higher:" + detail};
}

Verdict determinism() {
  const auto& a = first_run();
  const auto b = run_desk(kWork / "run_b");
  size_t same = 0, total = 0;
  std::string differing;
  for (const auto& entry : fs::directory_iterator(kWork / "run_a")) {
    const auto name = entry.path().filename().string();
    if (name == "timings.json") continue;  // wall-clock by design
    ++total;
    if (fs::exists(kWork / "run_b" / name) &&
        io::read_file(entry.path()) == io::read_file(kWork / "run_b" / name)) {
      ++same;
    } else {
      differing += " " + name;
    }
  }
  const bool digests = a.manifest.digests == b.manifest.digests;
  return {same == total && digests,
          fmt("%zu/%zu artifacts byte-identical across two runs", same, total) +
              (differing.empty() ? "" : "; differing:" + differing)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"beam-oracle", beam_oracle},
      {"diversity-identity", diversity_identity},
      {"diversity-direction", diversity_direction},
      {"loss-transform", loss_transform},
      {"loss-direction", loss_direction},
      {"complexity-ordering", complexity_ordering},
      {"sentence-cnn", sentence_cnn},
      {"lm-normalization", lm_normalization},
      {"sari", sari_suite},
      {"ter", ter_suite},
      {"pipeline-direction", pipeline_direction},
      {"oracle-dominance", oracle_dominance},
      {"determinism", determinism},
  };
  fs::create_directories(kWork);
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s [%02d] %-20s %s\n", v.pass ? "PASS" : "FAIL", index, name.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
