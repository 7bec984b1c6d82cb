#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simplify {

class EmbeddingTable {
 public:
  explicit EmbeddingTable(size_t dimension = 0)
      : dimension_(dimension), zeros_(dimension, 0.0) {}

  size_t dimension() const { return dimension_; }
  size_t size() const { return vectors_.size(); }

  // Throws DataError on a dimension mismatch or non-finite value.
  void set(const std::string& token, std::vector<double> vector);

  // Null for OOV tokens.
  const std::vector<double>* find(std::string_view token) const;

  // OOV tokens map to the zero vector.
  std::span<const double> lookup(std::string_view token) const;

  // Tokens in lexicographic order, for deterministic serialization.
  std::vector<std::string> tokens() const;

  // Number of duplicate tokens overwritten during load.
  size_t duplicate_count() const { return duplicates_; }

 private:
  friend EmbeddingTable load_embedding_table(const std::filesystem::path&);

  size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::vector<double> zeros_;
  size_t duplicates_ = 0;
};

// Space-separated `token v1 ... vd` lines; an optional first line `count dim`
// is skipped. Later duplicates win.
EmbeddingTable load_embedding_table(const std::filesystem::path& path);
EmbeddingTable parse_embedding_table(const std::vector<std::string>& lines);
std::string format_embedding_table(const EmbeddingTable& table);

// Document frequencies: `token<TAB>doc_count` lines plus `__N__<TAB>count`.
class DocumentFrequency {
 public:
  DocumentFrequency() = default;
  DocumentFrequency(std::unordered_map<std::string, long long> counts,
                    long long documents);

  long long documents() const { return documents_; }
  long long count(std::string_view token) const;

  // Smoothed inverse document frequency, ln((1 + N) / (1 + df)) + 1.
  double idf(std::string_view token) const;

 private:
  std::unordered_map<std::string, long long> counts_;
  long long documents_ = 0;
};

DocumentFrequency load_document_frequency(const std::filesystem::path& path);
DocumentFrequency parse_document_frequency(
    const std::vector<std::string>& lines);
DocumentFrequency count_document_frequency(
    const std::vector<std::vector<std::string>>& documents);

enum class Weighting { kUniform, kIdf };

struct SentenceVector {
  std::vector<double> values;
  // In-vocabulary tokens that contributed.
  size_t token_count = 0;

  bool is_zero() const { return token_count == 0; }
};

// Weighted mean of in-vocabulary token vectors. `df` is required for kIdf.
SentenceVector embed_sentence(const EmbeddingTable& table,
                              std::span<const std::string> tokens,
                              Weighting weighting = Weighting::kUniform,
                              const DocumentFrequency* df = nullptr);

// Either zero vector -> 0. Throws DataError on dimension mismatch.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

class SentenceEmbedder {
 public:
  virtual ~SentenceEmbedder() = default;
  virtual SentenceVector embed(std::span<const std::string> tokens) const = 0;
};

class MeanEmbedder : public SentenceEmbedder {
 public:
  MeanEmbedder(const EmbeddingTable& table, Weighting weighting,
               const DocumentFrequency* df = nullptr)
      : table_(table), weighting_(weighting), df_(df) {}

  SentenceVector embed(std::span<const std::string> tokens) const override {
    return embed_sentence(table_, tokens, weighting_, df_);
  }

 private:
  const EmbeddingTable& table_;
  Weighting weighting_;
  const DocumentFrequency* df_;
};

}  // namespace simplify
