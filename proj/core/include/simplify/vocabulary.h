#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simplify {

// Token <-> id map with three reserved entries.
class Vocabulary {
 public:
  static constexpr int kEos = 0;
  static constexpr int kBos = 1;
  static constexpr int kUnk = 2;
  static constexpr std::string_view kEosToken = "</s>";
  static constexpr std::string_view kBosToken = "<s>";
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocabulary();

  // Specials first, then every distinct token in lexicographic order.
  static Vocabulary build(std::span<const std::vector<std::string>> sentences);

  int add(const std::string& token);
  bool contains(std::string_view token) const;
  // kUnk for unknown tokens.
  int id(std::string_view token) const;
  const std::string& token(int id) const;
  size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  static bool is_special(int id) { return id <= kUnk; }

  std::vector<int> encode(std::span<const std::string> tokens) const;
  // Drops EOS/BOS.
  std::vector<std::string> decode(std::span<const int> ids) const;

  // One token per line, in id order.
  std::string serialize() const;
  static Vocabulary deserialize(std::string_view text);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace simplify
