#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace simplify {

// Conditional next-token model over a fixed vocabulary that includes an end
// marker. Implementations must be deterministic and safe for concurrent
// read-only use.
class SequenceScorer {
 public:
  virtual ~SequenceScorer() = default;
  virtual size_t vocab_size() const = 0;
  virtual int eos_id() const = 0;
  // Log-probabilities over the vocabulary; log-sum-exp must be 0.
  virtual std::vector<double> log_probs(std::span<const int> source,
                                        std::span<const int> prefix) const = 0;
};

struct Hypothesis {
  std::vector<int> tokens;  // ends with the end marker once finished
  double raw_logprob = 0.0;
  double penalty_accum = 0.0;
  double selection_score = 0.0;
  int parent_index = -1;
  bool finished = false;
  bool forced_eos = false;  // end marker appended at the length limit
};

enum class PenaltyMode {
  kAccumulate,   // sibling penalties persist in selection_score
  kCurrentStep,  // only the latest step's penalty applies
};

struct DecodeParams {
  int beam_width = 100;
  double delta = 1.0;
  int max_len = 30;  // maximum tokens before the end marker
  uint64_t seed = 1;
  PenaltyMode penalty_mode = PenaltyMode::kAccumulate;
};

void validate(const DecodeParams& params);

// Beam search where the j'-th best expansion of every hypothesis is charged
// j' * delta (j' counted from 1). Finished hypotheses leave the beam; the
// search ends when beam_width hypotheses have finished or the length limit
// forces the end marker onto the survivors. Sorted by raw_logprob descending.
std::vector<Hypothesis> diverse_beam_search(const SequenceScorer& scorer,
                                            std::span<const int> source,
                                            const DecodeParams& params);

// Plain beam search with the same finishing rules and no penalty.
std::vector<Hypothesis> beam_search(const SequenceScorer& scorer,
                                    std::span<const int> source,
                                    int beam_width, int max_len);

Hypothesis greedy_decode(const SequenceScorer& scorer,
                         std::span<const int> source, int max_len);

// Every sequence of at most max_len tokens followed by the end marker, ranked
// by joint log-probability. Requires vocab_size^max_len <= 1e6.
std::vector<Hypothesis> exhaustive_decode(const SequenceScorer& scorer,
                                          std::span<const int> source,
                                          int max_len);

// Throws NumericError unless `log_probs` has the scorer's size, is finite and
// normalized within 1e-6.
void check_distribution(std::span<const double> log_probs, size_t vocab_size);

// Scorer whose distribution for every prefix is drawn from a seeded hash of
// the prefix; the source is ignored. End marker id 0.
class RandomTableScorer : public SequenceScorer {
 public:
  RandomTableScorer(size_t vocab_size, uint64_t seed, double spread = 2.0);
  size_t vocab_size() const override { return vocab_size_; }
  int eos_id() const override { return 0; }
  std::vector<double> log_probs(std::span<const int> source,
                                std::span<const int> prefix) const override;

 private:
  size_t vocab_size_;
  uint64_t seed_;
  double spread_;
};

}  // namespace simplify
