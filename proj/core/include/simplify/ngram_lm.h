#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simplify {

inline constexpr double kFallbackDiscount = 0.75;

// Interpolated Kneser-Ney n-gram model stored in backoff form: every observed
// n-gram carries its full interpolated log-probability, every context carries
// the log of its interpolation weight. All logs are natural.
class KNModel {
 public:
  struct Entry {
    double logprob = 0.0;  // -inf for entries that only serve as contexts
    double backoff = 0.0;
  };

  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kEos = "</s>";
  static constexpr std::string_view kUnk = "<unk>";

  // Order-1 model assigning 1/|V| to every token of `tokens` plus </s> and
  // <unk>.
  static KNModel uniform(std::span<const std::string> tokens);

  int order() const { return order_; }
  // discounts()[k - 1] is the discount used at order k.
  const std::vector<double>& discounts() const { return discounts_; }
  // Every predictable token: training types, </s> and <unk>.
  std::vector<std::string> vocabulary() const;
  size_t ngram_count(int order) const;
  // |V| when the model is order 1 and assigns every token the same
  // probability, 0 otherwise.
  size_t uniform_support() const;

  // log p(token | last order-1 tokens of context). OOV tokens map to <unk>.
  double logprob(std::span<const std::string> context,
                 std::string_view token) const;

  // `order<TAB>ngram<TAB>logprob<TAB>backoff` lines sorted by order and
  // n-gram text, preceded by `#` header lines (version, order, discounts).
  std::string serialize() const;
  static KNModel deserialize(std::string_view text);

 private:
  friend KNModel train_kn_model(std::span<const std::vector<std::string>>, int);

  using Key = std::vector<int>;

  int id_of(std::string_view token) const;
  int intern(const std::string& token);
  double logprob_ids(std::span<const int> context, int token) const;

  int order_ = 1;
  std::vector<double> discounts_;
  std::vector<std::string> tokens_;  // id -> token; 0 = <s>, 1 = </s>, 2 = <unk>
  std::unordered_map<std::string, int> ids_;
  std::vector<std::map<Key, Entry>> tables_;  // tables_[k - 1] holds k-grams
};

// Discount per order D = n1 / (n1 + 2 n2) from the counts used at that order
// (raw counts at the top order, continuation counts below), falling back to
// 0.75 when n1 or n2 is zero. Sentences are padded with order-1 <s> tokens
// and one </s>.
KNModel train_kn_model(std::span<const std::vector<std::string>> sentences,
                       int order);

double ngram_logprob(const KNModel& model, std::span<const std::string> context,
                     std::string_view token);

// exp(-(1/N) sum log p) over the tokens and the end marker, N = |s| + 1.
// A uniform model returns its support size exactly.
double sentence_perplexity(const KNModel& model,
                           std::span<const std::string> sentence);

}  // namespace simplify
