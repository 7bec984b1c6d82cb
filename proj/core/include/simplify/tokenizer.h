#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace simplify {

struct Token {
  std::string surface;
  // False for stopwords, entity/number placeholders and punctuation.
  bool is_content = false;
};

// Splits text into tokens, preserving case.
//
// Rules, applied to each whitespace-delimited chunk:
//   1. Leading and trailing ASCII punctuation characters become separate
//      one-character tokens. A trailing '.' stays attached when the chunk is
//      a dotted abbreviation such as "U.S.".
//   2. Clitics split off the remaining core: "n't" ("don't" -> do n't,
//      "can't" -> ca n't) and 's 're 've 'll 'd 'm.
//   3. Punctuation inside a word ("Wal-Mart", "300,000") is kept.
// Bytes >= 0x80 are treated as word characters.
std::vector<std::string> tokenize_raw(std::string_view text);

// tokenize_raw followed by ASCII lowercasing.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view s);

bool is_punctuation(std::string_view token);
bool is_stopword(std::string_view token);  // expects lowercase
bool is_placeholder(std::string_view token);
bool is_content_word(std::string_view token);

std::vector<Token> annotate(const std::vector<std::string>& surfaces);

// Placeholder -> original surface tokens, in order of first appearance.
class EntityMap {
 public:
  // Returns the placeholder for a span, allocating ENT@n / NUM@n as needed.
  // Identical spans share a placeholder.
  const std::string& placeholder_for(const std::vector<std::string>& span,
                                     bool numeric);
  const std::vector<std::string>* lookup(std::string_view placeholder) const;
  size_t size() const { return entries_.size(); }
  const std::vector<std::pair<std::string, std::vector<std::string>>>&
  entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::vector<std::string>>> entries_;
  int entity_count_ = 0;
  int number_count_ = 0;
};

struct MaskedSentence {
  std::vector<Token> tokens;
  EntityMap entities;

  std::vector<std::string> surfaces() const;
};

// Replaces maximal runs of capitalized tokens that do not begin at sentence
// start with ENT@n, and numeric tokens with NUM@n. Capitalized stopwords
// ("I", "The") never join a run. Input must still carry case.
MaskedSentence mask_entities(const std::vector<std::string>& raw);

// Same, extending an existing map so that a pair of sentences shares
// placeholders.
std::vector<Token> mask_entities(const std::vector<std::string>& raw,
                                 EntityMap& entities);

// Restores placeholders from the map; unknown placeholders pass through.
std::vector<std::string> demask(const std::vector<std::string>& tokens,
                                const EntityMap& entities);

// tokenize_raw -> mask_entities -> lowercase everything but placeholders.
MaskedSentence prepare_sentence(std::string_view text);
std::vector<std::string> prepare_sentence(std::string_view text,
                                          EntityMap& entities);

}  // namespace simplify
