#include "simplify/corpus.h"

#include <cmath>

#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/rng.h"

namespace simplify {
namespace {

int parse_level(std::string_view field, size_t line_no) {
  if (field.size() != 1 || field[0] < '0' || field[0] > '4') {
    throw DataError("line " + std::to_string(line_no) + ": level '" +
                    std::string(field) + "' is not in 0..4");
  }
  return field[0] - '0';
}

}  // namespace

size_t LeveledCorpus::sentence_count() const {
  size_t n = 0;
  for (const auto& d : documents) n += d.sentences.size();
  return n;
}

LeveledCorpus parse_leveled_corpus(const std::vector<std::string>& lines) {
  LeveledCorpus corpus;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 3) {
      throw DataError("line " + std::to_string(i + 1) +
                      ": expected level<TAB>doc_id<TAB>sentence");
    }
    const int level = parse_level(fields[0], i + 1);
    const std::string doc_id(fields[1]);
    if (corpus.documents.empty() || corpus.documents.back().doc_id != doc_id ||
        corpus.documents.back().level != level) {
      corpus.documents.push_back({doc_id, level, {}});
    }
    EntityMap entities;
    corpus.documents.back().sentences.push_back(
        prepare_sentence(fields[2], entities));
  }
  return corpus;
}

LeveledCorpus load_leveled_corpus(const std::filesystem::path& path) {
  return parse_leveled_corpus(io::read_lines(path));
}

void WordLevelCounts::set(const std::string& word, const LevelCounts& counts) {
  int64_t total = 0;
  for (int64_t c : counts) {
    if (c < 0) throw DataError("negative level count for '" + word + "'");
    total += c;
  }
  if (total == 0) throw DataError("all-zero level counts for '" + word + "'");
  counts_[word] = counts;
}

void WordLevelCounts::add(const std::string& word, int level, int64_t n) {
  if (level < 0 || level >= kNumLevels || n < 0) {
    throw DataError("invalid count update for '" + word + "'");
  }
  if (n == 0) return;
  counts_[word][level] += n;
}

const LevelCounts* WordLevelCounts::find(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? nullptr : &it->second;
}

int64_t WordLevelCounts::total(std::string_view word) const {
  const LevelCounts* c = find(word);
  if (!c) return 0;
  int64_t t = 0;
  for (int64_t x : *c) t += x;
  return t;
}

WordLevelCounts count_by_level(const LeveledCorpus& corpus) {
  WordLevelCounts counts;
  for (const auto& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence) {
        if (!is_placeholder(token)) counts.add(token, doc.level);
      }
    }
  }
  return counts;
}

int label_from_counts(const LevelCounts& c, DescentPolicy policy) {
  int label = kOriginalLevel;
  for (int i = kOriginalLevel - 1; i >= 0; --i) {
    const double here = static_cast<double>(c[i]);
    const bool kept = here >= 0.7 * static_cast<double>(c[i + 1]) &&
                      here >= 0.4 * static_cast<double>(c[kOriginalLevel]);
    if (kept) {
      label = i;
    } else if (policy == DescentPolicy::kStopOnFailure) {
      break;
    }
  }
  return label;
}

int label_word_complexity(const WordLevelCounts& counts, std::string_view word,
                          DescentPolicy policy) {
  const LevelCounts* c = counts.find(word);
  if (!c) {
    throw DataError("word '" + std::string(word) +
                    "' is missing from the level counts");
  }
  return label_from_counts(*c, policy);
}

std::map<std::string, int> label_lexicon(const WordLevelCounts& counts,
                                         DescentPolicy policy) {
  std::map<std::string, int> labels;
  for (const auto& [word, c] : counts) labels[word] = label_from_counts(c, policy);
  return labels;
}

std::string format_word_counts(const WordLevelCounts& counts) {
  std::string out;
  for (const auto& [word, c] : counts) {
    out += word;
    for (int64_t n : c) out += '\t' + std::to_string(n);
    out += '\n';
  }
  return out;
}

WordLevelCounts parse_word_counts(const std::vector<std::string>& lines) {
  WordLevelCounts counts;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 1 + kNumLevels) {
      throw DataError("counts line " + std::to_string(i + 1) +
                      ": expected word followed by 5 level counts");
    }
    LevelCounts c{};
    for (int l = 0; l < kNumLevels; ++l) c[l] = io::parse_int(fields[1 + l]);
    counts.set(std::string(fields[0]), c);
  }
  return counts;
}

std::vector<AlignedPair> parse_aligned_pairs(
    const std::vector<std::string>& lines) {
  std::vector<AlignedPair> pairs;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 4) {
      throw DataError(
          "line " + std::to_string(i + 1) +
          ": expected complex_level<TAB>simple_level<TAB>complex<TAB>simple");
    }
    AlignedPair pair;
    pair.complex_level = parse_level(fields[0], i + 1);
    pair.simple_level = parse_level(fields[1], i + 1);
    if (pair.complex_level <= pair.simple_level) {
      throw DataError("line " + std::to_string(i + 1) +
                      ": complex level must exceed simple level");
    }
    pair.complex_sentence = prepare_sentence(fields[2], pair.entities);
    pair.simple_sentence = prepare_sentence(fields[3], pair.entities);
    if (pair.complex_sentence.empty() || pair.simple_sentence.empty()) {
      throw DataError("line " + std::to_string(i + 1) + ": empty sentence");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<AlignedPair> load_aligned_pairs(const std::filesystem::path& path) {
  return parse_aligned_pairs(io::read_lines(path));
}

std::vector<AlignedPair> filter_adjacent_levels(
    const std::vector<AlignedPair>& pairs) {
  std::vector<AlignedPair> out;
  for (const auto& p : pairs) {
    if (p.complex_level - p.simple_level >= 2) out.push_back(p);
  }
  return out;
}

DatasetSplit split_corpus(std::vector<AlignedPair> pairs,
                          const SplitRatios& ratios, uint64_t seed) {
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9 || ratios.train < 0 ||
      ratios.validation < 0 || ratios.test < 0) {
    throw ConfigError("split ratios must be non-negative and sum to 1");
  }
  if (pairs.size() < 3) {
    throw DataError("need at least 3 pairs to split, got " +
                    std::to_string(pairs.size()));
  }
  Rng rng(seed);
  rng.shuffle(std::span<AlignedPair>(pairs));

  const double n = static_cast<double>(pairs.size());
  const auto n_val = static_cast<size_t>(std::floor(n * ratios.validation + 1e-9));
  const auto n_test = static_cast<size_t>(std::floor(n * ratios.test + 1e-9));
  const size_t n_train = pairs.size() - n_val - n_test;

  DatasetSplit split;
  split.seed = seed;
  auto it = std::make_move_iterator(pairs.begin());
  split.train.assign(it, it + n_train);
  split.validation.assign(it + n_train, it + n_train + n_val);
  split.test.assign(it + n_train + n_val, std::make_move_iterator(pairs.end()));
  return split;
}

}  // namespace simplify
