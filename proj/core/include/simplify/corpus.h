#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "simplify/tokenizer.h"

namespace simplify {

inline constexpr int kNumLevels = 5;
// Level 4 is the original complex text, 0 the most simplified rewrite.
inline constexpr int kOriginalLevel = 4;

using Sentence = std::vector<std::string>;

struct Document {
  std::string doc_id;
  int level = kOriginalLevel;
  std::vector<Sentence> sentences;
};

struct LeveledCorpus {
  std::vector<Document> documents;

  size_t sentence_count() const;
};

// Parses `level<TAB>doc_id<TAB>sentence` lines. Consecutive lines with the
// same (doc_id, level) form one document. Blank lines are skipped.
LeveledCorpus parse_leveled_corpus(const std::vector<std::string>& lines);
LeveledCorpus load_leveled_corpus(const std::filesystem::path& path);

using LevelCounts = std::array<int64_t, kNumLevels>;

class WordLevelCounts {
 public:
  // Rejects negative counts and all-zero rows.
  void set(const std::string& word, const LevelCounts& counts);
  void add(const std::string& word, int level, int64_t n = 1);

  const LevelCounts* find(std::string_view word) const;
  int64_t total(std::string_view word) const;
  size_t size() const { return counts_.size(); }

  auto begin() const { return counts_.begin(); }
  auto end() const { return counts_.end(); }

 private:
  std::map<std::string, LevelCounts, std::less<>> counts_;
};

// Placeholders are not counted.
WordLevelCounts count_by_level(const LeveledCorpus& corpus);

// `word<TAB>c0<TAB>c1<TAB>c2<TAB>c3<TAB>c4` lines.
std::string format_word_counts(const WordLevelCounts& counts);
WordLevelCounts parse_word_counts(const std::vector<std::string>& lines);

enum class DescentPolicy {
  // Stop at the first simpler level that fails either threshold.
  kStopOnFailure,
  // Visit every level 3..0 regardless of earlier failures.
  kFullScan,
};

// Word complexity label from per-level counts: start at 4 and move to level i
// while c[i] >= 0.7 * c[i+1] and c[i] >= 0.4 * c[4].
int label_from_counts(const LevelCounts& counts,
                      DescentPolicy policy = DescentPolicy::kStopOnFailure);

// Throws DataError for words missing from `counts`.
int label_word_complexity(const WordLevelCounts& counts, std::string_view word,
                          DescentPolicy policy = DescentPolicy::kStopOnFailure);

std::map<std::string, int> label_lexicon(
    const WordLevelCounts& counts,
    DescentPolicy policy = DescentPolicy::kStopOnFailure);

struct AlignedPair {
  Sentence complex_sentence;
  Sentence simple_sentence;
  int complex_level = kOriginalLevel;
  int simple_level = 0;
  // Placeholders shared by both sides.
  EntityMap entities;
};

// Parses `complex_level<TAB>simple_level<TAB>complex<TAB>simple` lines.
std::vector<AlignedPair> parse_aligned_pairs(
    const std::vector<std::string>& lines);
std::vector<AlignedPair> load_aligned_pairs(const std::filesystem::path& path);

// Keeps pairs at least two levels apart.
std::vector<AlignedPair> filter_adjacent_levels(
    const std::vector<AlignedPair>& pairs);

struct SplitRatios {
  double train = 0.9;
  double validation = 0.05;
  double test = 0.05;
};

struct DatasetSplit {
  std::vector<AlignedPair> train;
  std::vector<AlignedPair> validation;
  std::vector<AlignedPair> test;
  uint64_t seed = 0;
};

// Seeded shuffle, then validation = floor(n * r_val), test = floor(n * r_test)
// and the remainder goes to train.
DatasetSplit split_corpus(std::vector<AlignedPair> pairs,
                          const SplitRatios& ratios, uint64_t seed);

}  // namespace simplify
