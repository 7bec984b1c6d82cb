#include "simplify/decoder.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "simplify/error.h"
#include "simplify/rng.h"
#include "simplify/weighted_loss.h"

namespace simplify {
namespace {

struct Expansion {
  int parent;
  int token;
  double logprob;
  double selection;
  double penalty;
};

std::vector<double> scored(const SequenceScorer& scorer,
                           std::span<const int> source,
                           std::span<const int> prefix) {
  std::vector<double> lp = scorer.log_probs(source, prefix);
  check_distribution(lp, scorer.vocab_size());
  return lp;
}

// Token ids ordered by log-probability descending, ties by lower id.
std::vector<int> ranked_tokens(std::span<const double> lp, size_t keep) {
  std::vector<int> order(lp.size());
  std::iota(order.begin(), order.end(), 0);
  keep = std::min(keep, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(keep),
                    order.end(), [&](int a, int b) {
                      if (lp[a] != lp[b]) return lp[a] > lp[b];
                      return a < b;
                    });
  order.resize(keep);
  return order;
}

bool expansion_before(const Expansion& a, const Expansion& b) {
  if (a.selection != b.selection) return a.selection > b.selection;
  if (a.parent != b.parent) return a.parent < b.parent;
  return a.token < b.token;
}

void sort_output(std::vector<Hypothesis>& out) {
  std::sort(out.begin(), out.end(), [](const Hypothesis& a, const Hypothesis& b) {
    if (a.raw_logprob != b.raw_logprob) return a.raw_logprob > b.raw_logprob;
    if (a.selection_score != b.selection_score) {
      return a.selection_score > b.selection_score;
    }
    return a.tokens < b.tokens;
  });
}

void check_scorer(const SequenceScorer& scorer) {
  if (scorer.vocab_size() == 0) throw ConfigError("scorer has an empty vocabulary");
  const int eos = scorer.eos_id();
  if (eos < 0 || static_cast<size_t>(eos) >= scorer.vocab_size()) {
    throw ConfigError("scorer end marker id outside its vocabulary");
  }
}

}  // namespace

void validate(const DecodeParams& params) {
  if (params.beam_width < 1) throw ConfigError("beam width must be >= 1");
  if (!(params.delta >= 0.0) || !std::isfinite(params.delta)) {
    throw ConfigError("delta must be a finite value >= 0");
  }
  if (params.max_len < 1) throw ConfigError("max_len must be >= 1");
}

void check_distribution(std::span<const double> log_probs, size_t vocab_size) {
  if (log_probs.size() != vocab_size) {
    throw NumericError("scorer returned " + std::to_string(log_probs.size()) +
                       " log-probabilities for a vocabulary of " +
                       std::to_string(vocab_size));
  }
  for (double v : log_probs) {
    if (!std::isfinite(v)) throw NumericError("scorer returned a non-finite log-probability");
  }
  const double m = *std::max_element(log_probs.begin(), log_probs.end());
  double s = 0.0;
  for (double v : log_probs) s += std::exp(v - m);
  const double lse = m + std::log(s);
  if (std::abs(lse) > 1e-6) {
    throw NumericError("scorer distribution is not normalized (log-sum-exp " +
                       std::to_string(lse) + ")");
  }
}

std::vector<Hypothesis> diverse_beam_search(const SequenceScorer& scorer,
                                            std::span<const int> source,
                                            const DecodeParams& params) {
  validate(params);
  check_scorer(scorer);
  const size_t b = static_cast<size_t>(params.beam_width);
  const int eos = scorer.eos_id();

  std::vector<Hypothesis> live(1);
  std::vector<Hypothesis> finished;
  for (int step = 0; step <= params.max_len; ++step) {
    if (live.empty() || finished.size() >= b) break;
    const bool forced = step == params.max_len;
    const size_t capacity = b - finished.size();

    std::vector<Expansion> expansions;
    for (size_t j = 0; j < live.size(); ++j) {
      const Hypothesis& parent = live[j];
      const std::vector<double> lp = scored(scorer, source, parent.tokens);
      const std::vector<int> proposals =
          forced ? std::vector<int>{eos} : ranked_tokens(lp, b);
      for (size_t r = 0; r < proposals.size(); ++r) {
        const int token = proposals[r];
        const double penalty = static_cast<double>(r + 1) * params.delta;
        const double base = params.penalty_mode == PenaltyMode::kAccumulate
                                ? parent.selection_score
                                : parent.raw_logprob;
        expansions.push_back({static_cast<int>(j), token, lp[token],
                              base + lp[token] - penalty, penalty});
      }
    }
    const size_t keep = std::min(capacity, expansions.size());
    std::partial_sort(expansions.begin(), expansions.begin() + static_cast<long>(keep),
                      expansions.end(), expansion_before);

    std::vector<Hypothesis> next;
    for (size_t i = 0; i < keep; ++i) {
      const Expansion& e = expansions[i];
      const Hypothesis& parent = live[static_cast<size_t>(e.parent)];
      Hypothesis h;
      h.tokens = parent.tokens;
      h.tokens.push_back(e.token);
      h.raw_logprob = parent.raw_logprob + e.logprob;
      h.penalty_accum = params.penalty_mode == PenaltyMode::kAccumulate
                            ? parent.penalty_accum + e.penalty
                            : e.penalty;
      h.selection_score = e.selection;
      h.parent_index = e.parent;
      if (e.token == eos) {
        h.finished = true;
        h.forced_eos = forced;
        finished.push_back(std::move(h));
      } else {
        next.push_back(std::move(h));
      }
    }
    live = std::move(next);
  }
  sort_output(finished);
  return finished;
}

std::vector<Hypothesis> beam_search(const SequenceScorer& scorer,
                                    std::span<const int> source,
                                    int beam_width, int max_len) {
  if (beam_width < 1) throw ConfigError("beam width must be >= 1");
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  check_scorer(scorer);
  const size_t b = static_cast<size_t>(beam_width);
  const int eos = scorer.eos_id();

  std::vector<Hypothesis> live(1);
  std::vector<Hypothesis> finished;
  for (int step = 0; step <= max_len && !live.empty() && finished.size() < b;
       ++step) {
    const bool forced = step == max_len;
    std::vector<Expansion> expansions;
    for (size_t j = 0; j < live.size(); ++j) {
      const std::vector<double> lp = scored(scorer, source, live[j].tokens);
      for (int token = 0; token < static_cast<int>(lp.size()); ++token) {
        if (forced && token != eos) continue;
        expansions.push_back({static_cast<int>(j), token, lp[token],
                              live[j].raw_logprob + lp[token], 0.0});
      }
    }
    std::stable_sort(expansions.begin(), expansions.end(), expansion_before);
    expansions.resize(std::min(expansions.size(), b - finished.size()));

    std::vector<Hypothesis> next;
    for (const Expansion& e : expansions) {
      Hypothesis h;
      h.tokens = live[static_cast<size_t>(e.parent)].tokens;
      h.tokens.push_back(e.token);
      h.raw_logprob = e.selection;
      h.selection_score = e.selection;
      h.parent_index = e.parent;
      h.finished = e.token == eos;
      h.forced_eos = h.finished && forced;
      (h.finished ? finished : next).push_back(std::move(h));
    }
    live = std::move(next);
  }
  sort_output(finished);
  return finished;
}

Hypothesis greedy_decode(const SequenceScorer& scorer,
                         std::span<const int> source, int max_len) {
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  check_scorer(scorer);
  const int eos = scorer.eos_id();
  Hypothesis h;
  for (int step = 0; step <= max_len; ++step) {
    const std::vector<double> lp = scored(scorer, source, h.tokens);
    const int token = step == max_len ? eos : ranked_tokens(lp, 1).front();
    h.tokens.push_back(token);
    h.raw_logprob += lp[token];
    h.parent_index = 0;
    if (token == eos) {
      h.finished = true;
      h.forced_eos = step == max_len;
      break;
    }
  }
  h.selection_score = h.raw_logprob;
  return h;
}

std::vector<Hypothesis> exhaustive_decode(const SequenceScorer& scorer,
                                          std::span<const int> source,
                                          int max_len) {
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  check_scorer(scorer);
  const double bound =
      std::pow(static_cast<double>(scorer.vocab_size()), max_len);
  if (bound > 1e6) {
    throw ConfigError("exhaustive search space exceeds 1e6 sequences");
  }
  const int eos = scorer.eos_id();
  std::vector<Hypothesis> out;
  std::vector<int> prefix;
  auto visit = [&](auto&& self, double logprob) -> void {
    const std::vector<double> lp = scored(scorer, source, prefix);
    const bool at_limit = static_cast<int>(prefix.size()) == max_len;
    for (int token = 0; token < static_cast<int>(lp.size()); ++token) {
      if (token == eos) {
        Hypothesis h;
        h.tokens = prefix;
        h.tokens.push_back(eos);
        h.raw_logprob = logprob + lp[token];
        h.selection_score = h.raw_logprob;
        h.finished = true;
        h.forced_eos = at_limit;
        out.push_back(std::move(h));
      } else if (!at_limit) {
        prefix.push_back(token);
        self(self, logprob + lp[token]);
        prefix.pop_back();
      }
    }
  };
  visit(visit, 0.0);
  sort_output(out);
  return out;
}

RandomTableScorer::RandomTableScorer(size_t vocab_size, uint64_t seed,
                                     double spread)
    : vocab_size_(vocab_size), seed_(seed), spread_(spread) {
  if (vocab_size == 0) throw ConfigError("random scorer needs a vocabulary");
}

std::vector<double> RandomTableScorer::log_probs(std::span<const int>,
                                                 std::span<const int> prefix) const {
  uint64_t h = mix64(seed_ ^ 0x9e3779b97f4a7c15ULL);
  for (int t : prefix) h = mix64(h ^ static_cast<uint64_t>(t + 1));
  h = mix64(h + prefix.size());
  Rng rng(h);
  std::vector<double> logits(vocab_size_);
  for (double& z : logits) z = rng.normal(0.0, spread_);
  return log_softmax(logits);
}

}  // namespace simplify
