#include "simplify/candidates.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simplify/error.h"
#include "simplify/metrics.h"
#include "simplify/rng.h"

namespace simplify {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Returns the objective; ties go to the lower centroid index.
double assign(std::span<const std::vector<double>> points,
              const std::vector<std::vector<double>>& centroids,
              std::vector<int>& assignments) {
  double objective = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (size_t c = 0; c < centroids.size(); ++c) {
      const double d = squared_distance(points[i], centroids[c]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    assignments[i] = arg;
    objective += best;
  }
  return objective;
}

std::vector<std::vector<double>> seed_plus_plus(
    std::span<const std::vector<double>> points, size_t k, Rng& rng) {
  const size_t n = points.size();
  std::vector<std::vector<double>> centroids;
  std::vector<bool> chosen(n, false);
  size_t first = rng.index(n);
  centroids.push_back(points[first]);
  chosen[first] = true;
  std::vector<double> d2(n);
  for (size_t i = 0; i < n; ++i) d2[i] = squared_distance(points[i], points[first]);
  while (centroids.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    size_t pick = n;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        pick = i;
        u -= d2[i];
        if (u < 0.0) break;
      }
    } else {
      for (size_t i = 0; i < n && pick == n; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    chosen[pick] = true;
    centroids.push_back(points[pick]);
    for (size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(points[i], points[pick]));
    }
  }
  return centroids;
}

}  // namespace

ClusterResult kmeans_cluster(std::span<const std::vector<double>> vectors,
                             const ClusterConfig& config) {
  if (config.k < 1) throw ConfigError("number of clusters must be >= 1");
  if (config.max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (vectors.empty()) throw DataError("k-means needs at least one vector");
  const size_t dim = vectors[0].size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DataError("k-means vectors differ in dimension");
  }
  const size_t n = vectors.size();
  const size_t k = std::min(static_cast<size_t>(config.k), n);
  Rng rng(config.seed);

  ClusterResult result;
  result.centroids = seed_plus_plus(vectors, k, rng);
  result.assignments.assign(n, -1);
  std::vector<int> previous;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    result.objective = assign(vectors, result.centroids, result.assignments);
    result.objective_history.push_back(result.objective);
    if (result.assignments == previous) break;
    previous = result.assignments;

    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<size_t> sizes(k, 0);
    for (size_t i = 0; i < n; ++i) {
      const auto c = static_cast<size_t>(result.assignments[i]);
      ++sizes[c];
      for (size_t j = 0; j < dim; ++j) sums[c][j] += vectors[i][j];
    }
    for (size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;
      for (size_t j = 0; j < dim; ++j) {
        result.centroids[c][j] = sums[c][j] / static_cast<double>(sizes[c]);
      }
    }
    for (size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      size_t far = 0;
      double worst = -1.0;
      for (size_t i = 0; i < n; ++i) {
        const double d = squared_distance(
            vectors[i], result.centroids[static_cast<size_t>(result.assignments[i])]);
        if (d > worst) {
          worst = d;
          far = i;
        }
      }
      result.centroids[c] = vectors[far];
    }
  }
  return result;
}

std::vector<size_t> select_representatives(std::span<const Candidate> candidates,
                                           const ClusterConfig& config) {
  if (candidates.empty()) return {};
  std::vector<std::vector<double>> vectors;
  vectors.reserve(candidates.size());
  for (const auto& c : candidates) vectors.push_back(c.vector.values);
  const ClusterResult clusters = kmeans_cluster(vectors, config);

  const size_t k = clusters.centroids.size();
  std::vector<size_t> best(k, candidates.size());
  std::vector<double> best_dist(k, 0.0);
  for (size_t i = 0; i < candidates.size(); ++i) {
    const auto c = static_cast<size_t>(clusters.assignments[i]);
    const double d = squared_distance(vectors[i], clusters.centroids[c]);
    if (best[c] == candidates.size() || d < best_dist[c] ||
        (d == best_dist[c] &&
         candidates[i].raw_logprob > candidates[best[c]].raw_logprob)) {
      best[c] = i;
      best_dist[c] = d;
    }
  }
  std::vector<size_t> out;
  for (size_t idx : best) {
    if (idx != candidates.size()) out.push_back(idx);
  }
  std::sort(out.begin(), out.end(), [&](size_t a, size_t b) {
    if (candidates[a].raw_logprob != candidates[b].raw_logprob) {
      return candidates[a].raw_logprob > candidates[b].raw_logprob;
    }
    return a < b;
  });
  return out;
}

void RerankWeights::validate() const {
  for (double b : {fluency, adequacy, simplicity}) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw ConfigError("rerank weights must be finite and >= 0");
    }
  }
  if (std::abs(fluency + adequacy + simplicity - 1.0) > 1e-9) {
    throw ConfigError("rerank weights must sum to 1");
  }
}

std::vector<ScoredCandidate> score_candidates(std::span<const Candidate> candidates,
                                              std::span<const std::string> source,
                                              const ScoringModels& models) {
  if (models.lm == nullptr || models.embedder == nullptr) {
    throw ConfigError("scoring needs a language model and a sentence embedder");
  }
  const SentenceVector src = models.embedder->embed(source);
  std::vector<ScoredCandidate> out;
  out.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (c.tokens.empty()) throw DataError("cannot score an empty candidate");
    ScoredCandidate s;
    s.index = i;
    s.tokens = c.tokens;
    s.raw_logprob = c.raw_logprob;
    s.perplexity = sentence_perplexity(*models.lm, c.tokens);
    const SentenceVector v =
        c.vector.values.empty() ? models.embedder->embed(c.tokens) : c.vector;
    s.cosine = cosine_similarity(src.values, v.values);
    s.complexity = models.sentence_model
                       ? predict_sentence_complexity(*models.sentence_model, c.tokens)
                       : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ScoredCandidate> normalize_and_rerank(std::vector<ScoredCandidate> scored,
                                                  const RerankWeights& weights) {
  weights.validate();
  if (scored.empty()) throw DataError("nothing to rerank");
  auto normalize = [&](auto raw, auto set, bool invert) {
    double lo = raw(scored[0]), hi = lo;
    for (const auto& s : scored) {
      lo = std::min(lo, raw(s));
      hi = std::max(hi, raw(s));
    }
    for (auto& s : scored) {
      if (hi == lo) {
        set(s, 0.5);
      } else {
        set(s, invert ? (hi - raw(s)) / (hi - lo) : (raw(s) - lo) / (hi - lo));
      }
    }
  };
  normalize([](const ScoredCandidate& s) { return s.perplexity; },
            [](ScoredCandidate& s, double v) { s.fluency = v; }, true);
  normalize([](const ScoredCandidate& s) { return s.cosine; },
            [](ScoredCandidate& s, double v) { s.adequacy = v; }, false);
  normalize([](const ScoredCandidate& s) { return s.complexity; },
            [](ScoredCandidate& s, double v) { s.simplicity = v; }, true);
  for (auto& s : scored) {
    s.final_score = weights.fluency * s.fluency + weights.adequacy * s.adequacy +
                    weights.simplicity * s.simplicity;
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     if (a.final_score != b.final_score) return a.final_score > b.final_score;
                     if (a.raw_logprob != b.raw_logprob) return a.raw_logprob > b.raw_logprob;
                     return a.index < b.index;
                   });
  return scored;
}

size_t match_length_select(std::span<const ScoredCandidate> ranked,
                           int target_len, int offset) {
  if (ranked.empty()) throw DataError("no candidates to select from");
  const long target = static_cast<long>(target_len) + offset;
  size_t best = 0;
  long best_gap = std::numeric_limits<long>::max();
  for (size_t i = 0; i < ranked.size(); ++i) {
    const long gap = std::labs(static_cast<long>(ranked[i].tokens.size()) - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

double avg_pairwise_edit_distance(std::span<const Sentence> candidates) {
  if (candidates.size() < 2) {
    throw DataError("pairwise edit distance needs at least two candidates");
  }
  double total = 0.0;
  size_t pairs = 0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    for (size_t j = i + 1; j < candidates.size(); ++j) {
      total += static_cast<double>(levenshtein_tokens(candidates[i], candidates[j]));
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

}  // namespace simplify
