#include "simplify/embeddings.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "simplify/error.h"
#include "simplify/io.h"

namespace simplify {

void EmbeddingTable::set(const std::string& token, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw DataError("embedding for '" + token + "' has dimension " +
                    std::to_string(vector.size()) + ", expected " +
                    std::to_string(dimension_));
  }
  for (double x : vector) {
    if (!std::isfinite(x)) {
      throw DataError("non-finite embedding value for '" + token + "'");
    }
  }
  auto [it, inserted] = vectors_.insert_or_assign(token, std::move(vector));
  if (!inserted) ++duplicates_;
}

const std::vector<double>* EmbeddingTable::find(std::string_view token) const {
  auto it = vectors_.find(std::string(token));
  return it == vectors_.end() ? nullptr : &it->second;
}

std::span<const double> EmbeddingTable::lookup(std::string_view token) const {
  if (const auto* v = find(token)) return *v;
  return zeros_;
}

std::vector<std::string> EmbeddingTable::tokens() const {
  std::vector<std::string> out;
  out.reserve(vectors_.size());
  for (const auto& [token, _] : vectors_) out.push_back(token);
  std::sort(out.begin(), out.end());
  return out;
}

EmbeddingTable parse_embedding_table(const std::vector<std::string>& lines) {
  size_t first = 0;
  while (first < lines.size() && lines[first].empty()) ++first;
  if (first == lines.size()) throw DataError("embedding table is empty");

  const auto head = io::split_whitespace(lines[first]);
  bool has_header = false;
  if (head.size() == 2) {
    try {
      io::parse_int(head[0]);
      io::parse_int(head[1]);
      has_header = true;
    } catch (const DataError&) {
    }
  }
  size_t dimension = 0;
  if (has_header) {
    dimension = static_cast<size_t>(io::parse_int(head[1]));
    ++first;
  } else {
    dimension = head.size() - 1;
  }
  if (dimension == 0) throw DataError("embedding dimension must be positive");

  EmbeddingTable table(dimension);
  for (size_t i = first; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = io::split_whitespace(lines[i]);
    if (fields.size() != dimension + 1) {
      throw DataError("embedding line " + std::to_string(i + 1) + " has " +
                      std::to_string(fields.size() - 1) + " values, expected " +
                      std::to_string(dimension));
    }
    std::vector<double> v(dimension);
    for (size_t k = 0; k < dimension; ++k) v[k] = io::parse_double(fields[k + 1]);
    table.set(fields[0], std::move(v));
  }
  if (table.size() == 0) throw DataError("embedding table is empty");
  return table;
}

EmbeddingTable load_embedding_table(const std::filesystem::path& path) {
  return parse_embedding_table(io::read_lines(path));
}

std::string format_embedding_table(const EmbeddingTable& table) {
  std::ostringstream out;
  out << table.size() << ' ' << table.dimension() << '\n';
  for (const auto& token : table.tokens()) {
    out << token;
    for (double x : *table.find(token)) out << ' ' << io::format_double(x);
    out << '\n';
  }
  return out.str();
}

DocumentFrequency::DocumentFrequency(
    std::unordered_map<std::string, long long> counts, long long documents)
    : counts_(std::move(counts)), documents_(documents) {
  if (documents_ <= 0) throw DataError("document count must be positive");
}

long long DocumentFrequency::count(std::string_view token) const {
  auto it = counts_.find(std::string(token));
  return it == counts_.end() ? 0 : it->second;
}

double DocumentFrequency::idf(std::string_view token) const {
  return std::log((1.0 + static_cast<double>(documents_)) /
                  (1.0 + static_cast<double>(count(token)))) +
         1.0;
}

DocumentFrequency parse_document_frequency(
    const std::vector<std::string>& lines) {
  std::unordered_map<std::string, long long> counts;
  long long documents = -1;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 2) {
      throw DataError("document-frequency line " + std::to_string(i + 1) +
                      ": expected token<TAB>count");
    }
    const long long n = io::parse_int(fields[1]);
    if (n < 0) throw DataError("negative document count");
    if (fields[0] == "__N__") {
      documents = n;
    } else {
      counts[std::string(fields[0])] = n;
    }
  }
  if (documents < 0) throw DataError("document-frequency table lacks __N__");
  return DocumentFrequency(std::move(counts), documents);
}

DocumentFrequency load_document_frequency(const std::filesystem::path& path) {
  return parse_document_frequency(io::read_lines(path));
}

DocumentFrequency count_document_frequency(
    const std::vector<std::vector<std::string>>& documents) {
  std::unordered_map<std::string, long long> counts;
  for (const auto& doc : documents) {
    std::set<std::string> seen(doc.begin(), doc.end());
    for (const auto& t : seen) ++counts[t];
  }
  return DocumentFrequency(std::move(counts),
                           static_cast<long long>(documents.size()));
}

SentenceVector embed_sentence(const EmbeddingTable& table,
                              std::span<const std::string> tokens,
                              Weighting weighting,
                              const DocumentFrequency* df) {
  if (weighting == Weighting::kIdf && df == nullptr) {
    throw ConfigError("idf weighting requires a document-frequency table");
  }
  SentenceVector out;
  out.values.assign(table.dimension(), 0.0);
  double total_weight = 0.0;
  for (const auto& token : tokens) {
    const auto* v = table.find(token);
    if (!v) continue;
    const double w = weighting == Weighting::kIdf ? df->idf(token) : 1.0;
    for (size_t k = 0; k < v->size(); ++k) out.values[k] += w * (*v)[k];
    total_weight += w;
    ++out.token_count;
  }
  if (total_weight > 0.0) {
    for (double& x : out.values) x /= total_weight;
  }
  return out;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DataError("cosine_similarity: dimension mismatch (" +
                    std::to_string(u.size()) + " vs " +
                    std::to_string(v.size()) + ")");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(nu * nv), -1.0, 1.0);
}

}  // namespace simplify
