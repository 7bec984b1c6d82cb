#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simplify/corpus.h"

namespace simplify {

enum class SariVariant {
  // Empty operations score 1 when the reference side is empty too; a deletion
  // is good when the references also drop it.
  kConsistent,
  // Arithmetic of the widely distributed reference script: empty denominators
  // score 0 and good deletions are counted as deleted minus reference counts.
  kReleasedScript,
};

struct SariComponents {
  double add = 0.0;
  double keep = 0.0;
  double del = 0.0;
};

struct SariResult {
  std::array<SariComponents, 4> per_order;  // n = 1..4
  double overall = 0.0;                     // in [0, 100]
};

SariResult sari(std::span<const std::string> source,
                std::span<const std::string> candidate,
                std::span<const Sentence> references,
                SariVariant variant = SariVariant::kConsistent);

// Flesch-Kincaid grade level; punctuation tokens are not words.
double fkgl(std::span<const Sentence> sentences);

size_t levenshtein_tokens(std::span<const std::string> a,
                          std::span<const std::string> b);

struct TerResult {
  size_t edits = 0;
  size_t shifts = 0;
  size_t ref_length = 0;
  double score = 0.0;
};

inline constexpr size_t kMaxShiftBlock = 10;

// Greedy block shifts (each costing one edit) applied while they reduce the
// remaining edit distance by more than their cost, then Levenshtein edits.
TerResult ter(std::span<const std::string> hypothesis,
              std::span<const std::string> reference);

struct CorpusStats {
  double avg_length = 0.0;  // tokens, punctuation included
  double fkgl = 0.0;
  double avg_ter_vs_input = 0.0;
  double avg_insertions = 0.0;  // output types absent from the input
};

CorpusStats corpus_stats(std::span<const Sentence> outputs,
                         std::span<const Sentence> inputs);

struct SystemReport {
  std::string system;
  double sari = 0.0;
  std::optional<double> oracle_sari;
  CorpusStats stats;
  std::optional<double> edit;  // mean pairwise candidate edit distance
};

// `system  SARI  Oracle  Len  FKGL  TER  Ins  Edit`, empty cells for
// missing values.
std::string format_report_tsv(std::span<const SystemReport> rows);
std::string format_report_table(std::span<const SystemReport> rows);

}  // namespace simplify
