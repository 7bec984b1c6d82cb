#include "simplify/tokenizer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace simplify {
namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) ||
         (c >= 91 && c <= 96) || (c >= 123 && c <= 126);
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

char lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (lower_ascii(a[i]) != lower_ascii(b[i])) return false;
  }
  return true;
}

// "U.S" / "e.g" style: single letters separated by dots.
bool is_dotted_abbreviation(std::string_view core) {
  if (core.size() < 3) return false;
  for (size_t i = 0; i < core.size(); ++i) {
    const bool want_dot = (i % 2 == 1);
    const unsigned char c = static_cast<unsigned char>(core[i]);
    if (want_dot ? c != '.' : !std::isalpha(c)) return false;
  }
  return core.size() % 2 == 1;
}

void split_clitics(std::string_view core, std::vector<std::string>& out) {
  if (core.size() > 3 && iequals(core.substr(core.size() - 3), "n't")) {
    out.emplace_back(core.substr(0, core.size() - 3));
    out.emplace_back(core.substr(core.size() - 3));
    return;
  }
  static constexpr std::array<std::string_view, 6> kSuffixes = {
      "'s", "'re", "'ve", "'ll", "'d", "'m"};
  for (std::string_view suffix : kSuffixes) {
    if (core.size() > suffix.size() &&
        iequals(core.substr(core.size() - suffix.size()), suffix)) {
      out.emplace_back(core.substr(0, core.size() - suffix.size()));
      out.emplace_back(core.substr(core.size() - suffix.size()));
      return;
    }
  }
  out.emplace_back(core);
}

void tokenize_chunk(std::string_view chunk, std::vector<std::string>& out) {
  size_t begin = 0;
  size_t end = chunk.size();
  while (begin < end &&
         is_ascii_punct(static_cast<unsigned char>(chunk[begin]))) {
    out.emplace_back(1, chunk[begin]);
    ++begin;
  }
  std::vector<std::string> trailing;
  while (end > begin &&
         is_ascii_punct(static_cast<unsigned char>(chunk[end - 1]))) {
    if (chunk[end - 1] == '.' &&
        is_dotted_abbreviation(chunk.substr(begin, end - 1 - begin))) {
      break;
    }
    trailing.emplace_back(1, chunk[end - 1]);
    --end;
  }
  if (end > begin) split_clitics(chunk.substr(begin, end - begin), out);
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

bool is_numeric(std::string_view token) {
  bool digit = false;
  for (char c : token) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != ',' && c != '.') {
      return false;
    }
  }
  return digit;
}

bool is_capitalized(std::string_view token) {
  return !token.empty() && token[0] >= 'A' && token[0] <= 'Z';
}

const std::unordered_set<std::string_view>& stopwords() {
  static const std::unordered_set<std::string_view> kWords = {
      "a", "about", "above", "after", "again", "against", "ain", "all", "am",
      "an", "and", "any", "are", "aren", "as", "at", "be", "because", "been",
      "before", "being", "below", "between", "both", "but", "by", "can",
      "ca", "could", "couldn", "d", "did", "didn", "do", "does", "doesn",
      "doing", "don", "down", "during", "each", "few", "for", "from",
      "further", "had", "hadn", "has", "hasn", "have", "haven", "having",
      "he", "her", "here", "hers", "herself", "him", "himself", "his", "how",
      "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just",
      "ll", "m", "ma", "me", "might", "mightn", "more", "most", "must",
      "mustn", "my", "myself", "needn", "no", "nor", "not", "now", "o", "of",
      "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves",
      "out", "over", "own", "re", "s", "same", "shall", "shan", "she",
      "should", "shouldn", "so", "some", "such", "t", "than", "that", "the",
      "their", "theirs", "them", "themselves", "then", "there", "these",
      "they", "this", "those", "through", "to", "too", "under", "until", "up",
      "ve", "very", "was", "wasn", "we", "were", "weren", "what", "when",
      "where", "which", "while", "who", "whom", "why", "will", "with", "won",
      "wo", "would", "wouldn", "y", "you", "your", "yours", "yourself",
      "yourselves", "n't", "'s", "'re", "'ve", "'ll", "'d", "'m", "also",
      "may", "upon", "yet", "every", "its", "per", "via", "among", "along",
      "within", "without", "across", "around", "behind", "beside", "besides",
      "toward", "towards", "onto", "unless", "whether", "though", "although",
      "however", "either", "neither", "whose", "been"};
  return kWords;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower_ascii);
  return out;
}

std::vector<std::string> tokenize_raw(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) tokenize_chunk(text.substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens = tokenize_raw(text);
  for (auto& t : tokens) t = to_lower(t);
  return tokens;
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return is_ascii_punct(static_cast<unsigned char>(c));
  });
}

bool is_stopword(std::string_view token) { return stopwords().contains(token); }

bool is_placeholder(std::string_view token) {
  return token.starts_with("ENT@") || token.starts_with("NUM@");
}

bool is_content_word(std::string_view token) {
  return !token.empty() && !is_placeholder(token) && !is_punctuation(token) &&
         !is_stopword(token);
}

std::vector<Token> annotate(const std::vector<std::string>& surfaces) {
  std::vector<Token> out;
  out.reserve(surfaces.size());
  for (const auto& s : surfaces) out.push_back({s, is_content_word(s)});
  return out;
}

const std::string& EntityMap::placeholder_for(
    const std::vector<std::string>& span, bool numeric) {
  for (const auto& [placeholder, original] : entries_) {
    if (original == span && placeholder.starts_with(numeric ? "NUM@" : "ENT@")) {
      return placeholder;
    }
  }
  const int n = numeric ? ++number_count_ : ++entity_count_;
  entries_.emplace_back((numeric ? "NUM@" : "ENT@") + std::to_string(n), span);
  return entries_.back().first;
}

const std::vector<std::string>* EntityMap::lookup(
    std::string_view placeholder) const {
  for (const auto& [p, original] : entries_) {
    if (p == placeholder) return &original;
  }
  return nullptr;
}

std::vector<std::string> MaskedSentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<Token> mask_entities(const std::vector<std::string>& raw,
                                 EntityMap& entities) {
  std::vector<Token> out;
  size_t i = 0;
  auto joins_span = [&](size_t k) {
    return is_capitalized(raw[k]) && !is_stopword(to_lower(raw[k]));
  };
  while (i < raw.size()) {
    if (is_numeric(raw[i])) {
      out.push_back({entities.placeholder_for({raw[i]}, true), false});
      ++i;
      continue;
    }
    if (joins_span(i)) {
      size_t j = i;
      while (j < raw.size() && joins_span(j)) ++j;
      if (i == 0) {
        for (size_t k = i; k < j; ++k) {
          out.push_back({raw[k], is_content_word(to_lower(raw[k]))});
        }
      } else {
        std::vector<std::string> span(raw.begin() + i, raw.begin() + j);
        out.push_back({entities.placeholder_for(span, false), false});
      }
      i = j;
      continue;
    }
    out.push_back({raw[i], is_content_word(to_lower(raw[i]))});
    ++i;
  }
  return out;
}

MaskedSentence mask_entities(const std::vector<std::string>& raw) {
  MaskedSentence masked;
  masked.tokens = mask_entities(raw, masked.entities);
  return masked;
}

std::vector<std::string> demask(const std::vector<std::string>& tokens,
                                const EntityMap& entities) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (const auto* original = entities.lookup(t)) {
      out.insert(out.end(), original->begin(), original->end());
    } else {
      out.push_back(t);
    }
  }
  return out;
}

std::vector<std::string> prepare_sentence(std::string_view text,
                                          EntityMap& entities) {
  std::vector<Token> tokens = mask_entities(tokenize_raw(text), entities);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (auto& t : tokens) {
    out.push_back(is_placeholder(t.surface) ? t.surface : to_lower(t.surface));
  }
  return out;
}

MaskedSentence prepare_sentence(std::string_view text) {
  MaskedSentence masked;
  auto surfaces = prepare_sentence(text, masked.entities);
  masked.tokens = annotate(surfaces);
  return masked;
}

}  // namespace simplify
