#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "simplify/corpus.h"
#include "simplify/embeddings.h"
#include "simplify/sentence_cnn.h"
#include "simplify/weighted_loss.h"

// Seeded generators for the small synthetic datasets that ship with the
// repository. Every generator is a pure function of its arguments.
namespace simplify::desk {

inline constexpr size_t kEmbeddingDim = 16;

// Pseudo-words with a latent complexity in [0, 4]. Per-level counts follow a
// retention curve that drops below the latent level, so labels derived from
// the counts track it; word length and one embedding direction also
// correlate with it, raw frequency does not.
struct SyntheticLexicon {
  WordLevelCounts counts;
  EmbeddingTable embeddings{kEmbeddingDim};
  std::map<std::string, double> latent;
};

SyntheticLexicon make_lexicon(size_t words, uint64_t seed);

// Sentences of lexicon words whose target level drives which words appear;
// sentence length is only weakly tied to the level.
std::vector<LabeledSentence> make_leveled_sentences(
    const SyntheticLexicon& lexicon, size_t count, uint64_t seed);

// Pairs whose targets realize each concept with a simple or a complex
// synonym, the complex one with probability `complex_share`.
struct SynonymCorpus {
  std::vector<std::string> pair_lines;  // aligned-pair TSV
  ComplexityTable complexity;
};

SynonymCorpus make_synonym_corpus(size_t pairs, double complex_share,
                                  uint64_t seed);

// English template corpus: documents rendered at all five levels, aligned
// pairs between levels, plain-text sentences for the language model and a
// word-vector table covering the vocabulary.
struct EnglishCorpus {
  std::vector<std::string> leveled_lines;
  std::vector<std::string> pair_lines;
  std::vector<std::string> lm_lines;
  EmbeddingTable embeddings{kEmbeddingDim};
};

EnglishCorpus make_english_corpus(size_t documents, size_t pairs, uint64_t seed);

// Writes every dataset plus a pipeline configuration; returns written paths.
std::vector<std::filesystem::path> write_all(const std::filesystem::path& data_dir,
                                             const std::filesystem::path& config_path,
                                             uint64_t seed);

}  // namespace simplify::desk
