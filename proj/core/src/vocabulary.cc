#include "simplify/vocabulary.h"

#include <set>

#include "simplify/error.h"
#include "simplify/io.h"

namespace simplify {

Vocabulary::Vocabulary() {
  add(std::string(kEosToken));
  add(std::string(kBosToken));
  add(std::string(kUnkToken));
}

Vocabulary Vocabulary::build(
    std::span<const std::vector<std::string>> sentences) {
  std::set<std::string> distinct;
  for (const auto& s : sentences) distinct.insert(s.begin(), s.end());
  Vocabulary vocab;
  for (const auto& t : distinct) vocab.add(t);
  return vocab;
}

int Vocabulary::add(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  tokens_.push_back(token);
  ids_.emplace(token, id);
  return id;
}

bool Vocabulary::contains(std::string_view token) const {
  return ids_.contains(std::string(token));
}

int Vocabulary::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || static_cast<size_t>(id) >= tokens_.size()) {
    throw DataError("token id " + std::to_string(id) + " out of range");
  }
  return tokens_[static_cast<size_t>(id)];
}

std::vector<int> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

std::vector<std::string> Vocabulary::decode(std::span<const int> ids) const {
  std::vector<std::string> out;
  for (int id : ids) {
    if (id == kEos || id == kBos) continue;
    out.push_back(token(id));
  }
  return out;
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (const auto& t : tokens_) out += t + '\n';
  return out;
}

Vocabulary Vocabulary::deserialize(std::string_view text) {
  Vocabulary vocab;
  auto lines = io::split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 3 || lines[0] != kEosToken || lines[1] != kBosToken ||
      lines[2] != kUnkToken) {
    throw DataError("vocabulary must start with </s>, <s>, <unk>");
  }
  for (size_t i = 3; i < lines.size(); ++i) {
    const std::string token(lines[i]);
    if (vocab.contains(token)) throw DataError("duplicate vocabulary token '" + token + "'");
    vocab.add(token);
  }
  return vocab;
}

}  // namespace simplify
