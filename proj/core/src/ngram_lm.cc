#include "simplify/ngram_lm.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "simplify/error.h"
#include "simplify/io.h"

namespace simplify {
namespace {

constexpr int kBosId = 0;
constexpr int kEosId = 1;
constexpr int kUnkId = 2;
constexpr std::string_view kHeader = "# simplify-kn v1";

double discount_from(const std::map<std::vector<int>, long long>& counts) {
  long long n1 = 0, n2 = 0;
  for (const auto& [_, c] : counts) {
    if (c == 1) ++n1;
    if (c == 2) ++n2;
  }
  if (n1 == 0 || n2 == 0) return kFallbackDiscount;
  return static_cast<double>(n1) / static_cast<double>(n1 + 2 * n2);
}

struct ContextStats {
  long long total = 0;
  long long distinct = 0;
};

}  // namespace

int KNModel::intern(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  tokens_.push_back(token);
  ids_.emplace(token, id);
  return id;
}

int KNModel::id_of(std::string_view token) const {
  if (token == kBos) return kUnkId;
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnkId : it->second;
}

KNModel KNModel::uniform(std::span<const std::string> tokens) {
  KNModel model;
  model.order_ = 1;
  model.discounts_ = {0.0};
  model.intern(std::string(kBos));
  model.intern(std::string(kEos));
  model.intern(std::string(kUnk));
  std::set<std::string> distinct(tokens.begin(), tokens.end());
  for (const auto& t : distinct) {
    if (t != kBos) model.intern(t);
  }
  model.tables_.resize(1);
  const double lp = -std::log(static_cast<double>(model.tokens_.size() - 1));
  for (int id = 1; id < static_cast<int>(model.tokens_.size()); ++id) {
    model.tables_[0][{id}] = {lp, 0.0};
  }
  return model;
}

std::vector<std::string> KNModel::vocabulary() const {
  return std::vector<std::string>(tokens_.begin() + 1, tokens_.end());
}

size_t KNModel::ngram_count(int order) const {
  if (order < 1 || order > order_) return 0;
  return tables_[static_cast<size_t>(order - 1)].size();
}

size_t KNModel::uniform_support() const {
  if (order_ != 1 || tables_.empty() || tables_[0].empty()) return 0;
  const double first = tables_[0].begin()->second.logprob;
  for (const auto& [key, entry] : tables_[0]) {
    if (entry.logprob != first) return 0;
  }
  return tables_[0].size();
}

double KNModel::logprob_ids(std::span<const int> context, int token) const {
  if (context.empty()) {
    auto it = tables_[0].find({token});
    // Every predictable token has a unigram entry.
    return it == tables_[0].end() ? tables_[0].at({kUnkId}).logprob
                                  : it->second.logprob;
  }
  Key key(context.begin(), context.end());
  key.push_back(token);
  const auto& table = tables_[context.size()];
  if (auto it = table.find(key); it != table.end()) return it->second.logprob;
  double backoff = 0.0;
  key.pop_back();
  const auto& ctx_table = tables_[context.size() - 1];
  if (auto it = ctx_table.find(key); it != ctx_table.end()) {
    backoff = it->second.backoff;
  }
  return backoff + logprob_ids(context.subspan(1), token);
}

double KNModel::logprob(std::span<const std::string> context,
                        std::string_view token) const {
  const size_t keep = std::min(context.size(), static_cast<size_t>(order_ - 1));
  std::vector<int> ids;
  ids.reserve(keep);
  for (size_t i = context.size() - keep; i < context.size(); ++i) {
    ids.push_back(context[i] == kBos ? kBosId : id_of(context[i]));
  }
  return logprob_ids(ids, id_of(token));
}

std::string KNModel::serialize() const {
  std::ostringstream out;
  out << kHeader << '\n';
  out << "# order " << order_ << '\n';
  for (size_t k = 0; k < discounts_.size(); ++k) {
    out << "# discount " << (k + 1) << ' ' << io::format_double(discounts_[k])
        << '\n';
  }
  for (int k = 1; k <= order_; ++k) {
    std::vector<std::pair<std::string, const Entry*>> rows;
    for (const auto& [key, entry] : tables_[static_cast<size_t>(k - 1)]) {
      std::string text;
      for (size_t i = 0; i < key.size(); ++i) {
        if (i) text += ' ';
        text += tokens_[static_cast<size_t>(key[i])];
      }
      rows.emplace_back(std::move(text), &entry);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [text, entry] : rows) {
      out << k << '\t' << text << '\t' << io::format_double(entry->logprob)
          << '\t' << io::format_double(entry->backoff) << '\n';
    }
  }
  return out.str();
}

KNModel KNModel::deserialize(std::string_view text) {
  KNModel model;
  model.intern(std::string(kBos));
  model.intern(std::string(kEos));
  model.intern(std::string(kUnk));
  auto lines = io::split(text, '\n');
  if (lines.empty() || lines[0] != kHeader) {
    throw DataError("not a Kneser-Ney model dump");
  }
  bool have_order = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (line.empty()) continue;
    if (line.starts_with("# ")) {
      const auto fields = io::split_whitespace(line.substr(2));
      if (fields.size() == 2 && fields[0] == "order") {
        model.order_ = static_cast<int>(io::parse_int(fields[1]));
        if (model.order_ < 1) throw DataError("model order must be >= 1");
        model.tables_.resize(static_cast<size_t>(model.order_));
        model.discounts_.assign(static_cast<size_t>(model.order_), 0.0);
        have_order = true;
      } else if (fields.size() == 3 && fields[0] == "discount" && have_order) {
        const auto k = io::parse_int(fields[1]);
        if (k < 1 || k > model.order_) throw DataError("discount order out of range");
        model.discounts_[static_cast<size_t>(k - 1)] = io::parse_double(fields[2]);
      }
      continue;
    }
    if (!have_order) throw DataError("model dump lacks '# order' before n-grams");
    const auto fields = io::split(line, '\t');
    if (fields.size() != 4) {
      throw DataError("model dump line " + std::to_string(i + 1) +
                      ": expected order<TAB>ngram<TAB>logprob<TAB>backoff");
    }
    const auto k = io::parse_int(fields[0]);
    if (k < 1 || k > model.order_) throw DataError("n-gram order out of range");
    const auto words = io::split_whitespace(fields[1]);
    if (words.size() != static_cast<size_t>(k)) {
      throw DataError("model dump line " + std::to_string(i + 1) +
                      ": n-gram length does not match its order");
    }
    Key key;
    for (const auto& w : words) key.push_back(model.intern(w));
    model.tables_[static_cast<size_t>(k - 1)][key] = {
        io::parse_double(fields[2]), io::parse_double(fields[3])};
  }
  if (!have_order) throw DataError("model dump lacks '# order'");
  return model;
}

KNModel train_kn_model(std::span<const std::vector<std::string>> sentences,
                       int order) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  if (sentences.empty()) throw DataError("language model needs at least one sentence");

  KNModel model;
  model.order_ = order;
  model.intern(std::string(KNModel::kBos));
  model.intern(std::string(KNModel::kEos));
  model.intern(std::string(KNModel::kUnk));
  {
    std::set<std::string> distinct;
    for (const auto& s : sentences) distinct.insert(s.begin(), s.end());
    for (const auto& t : distinct) {
      if (t != KNModel::kBos && t != KNModel::kEos) model.intern(t);
    }
  }
  const size_t n = static_cast<size_t>(order);

  // types[k-1]: distinct k-grams ending at predicted positions.
  // counts[k-1]: raw counts at the top order, continuation counts below.
  std::vector<std::map<std::vector<int>, long long>> counts(n);
  std::vector<std::set<std::vector<int>>> types(n);
  for (const auto& s : sentences) {
    std::vector<int> seq(n - 1, kBosId);
    for (const auto& t : s) seq.push_back(model.id_of(t));
    seq.push_back(kEosId);
    for (size_t i = n - 1; i < seq.size(); ++i) {
      for (size_t k = 1; k <= n; ++k) {
        std::vector<int> gram(seq.begin() + static_cast<long>(i + 1 - k),
                              seq.begin() + static_cast<long>(i + 1));
        if (k == n) ++counts[k - 1][gram];
        types[k - 1].insert(std::move(gram));
      }
    }
  }
  for (size_t k = 1; k < n; ++k) {
    for (const auto& longer : types[k]) {
      ++counts[k - 1][std::vector<int>(longer.begin() + 1, longer.end())];
    }
  }

  model.discounts_.resize(n);
  std::vector<std::map<std::vector<int>, ContextStats>> contexts(n);
  for (size_t k = 1; k <= n; ++k) {
    model.discounts_[k - 1] = discount_from(counts[k - 1]);
    for (const auto& [gram, c] : counts[k - 1]) {
      auto& stats = contexts[k - 1][std::vector<int>(gram.begin(), gram.end() - 1)];
      stats.total += c;
      stats.distinct += 1;
    }
  }

  const int vocab_size = static_cast<int>(model.tokens_.size()) - 1;  // minus <s>
  const double uniform = 1.0 / static_cast<double>(vocab_size);

  // Interpolated probability from first principles; memoized per order.
  std::vector<std::map<std::vector<int>, double>> memo(n);
  auto prob = [&](auto&& self, std::span<const int> gram) -> double {
    const size_t k = gram.size();
    if (k == 0) return uniform;
    std::vector<int> key(gram.begin(), gram.end());
    if (auto it = memo[k - 1].find(key); it != memo[k - 1].end()) return it->second;
    const double lower = self(self, gram.subspan(1));
    const std::vector<int> ctx(gram.begin(), gram.end() - 1);
    double p = lower;
    if (auto cs = contexts[k - 1].find(ctx); cs != contexts[k - 1].end()) {
      const double d = model.discounts_[k - 1];
      const double total = static_cast<double>(cs->second.total);
      auto c = counts[k - 1].find(key);
      const double count = c == counts[k - 1].end() ? 0.0 : static_cast<double>(c->second);
      p = std::max(count - d, 0.0) / total +
          d * static_cast<double>(cs->second.distinct) / total * lower;
    }
    memo[k - 1].emplace(std::move(key), p);
    return p;
  };

  model.tables_.assign(n, {});
  for (int id = 1; id <= vocab_size; ++id) {
    const std::vector<int> g{id};
    model.tables_[0][g] = {std::log(prob(prob, g)), 0.0};
  }
  for (size_t k = 2; k <= n; ++k) {
    for (const auto& [gram, _] : counts[k - 1]) {
      model.tables_[k - 1][gram] = {std::log(prob(prob, gram)), 0.0};
    }
  }
  for (size_t k = 2; k <= n; ++k) {
    const double d = model.discounts_[k - 1];
    for (const auto& [ctx, stats] : contexts[k - 1]) {
      const double gamma = d * static_cast<double>(stats.distinct) /
                           static_cast<double>(stats.total);
      auto [it, inserted] =
          model.tables_[k - 2].try_emplace(ctx, KNModel::Entry{-HUGE_VAL, 0.0});
      it->second.backoff = std::log(gamma);
    }
  }
  return model;
}

double ngram_logprob(const KNModel& model, std::span<const std::string> context,
                     std::string_view token) {
  return model.logprob(context, token);
}

double sentence_perplexity(const KNModel& model,
                           std::span<const std::string> sentence) {
  if (sentence.empty()) throw DataError("perplexity of an empty sentence");
  // exp(ln |V|) is generally one ulp away from |V|.
  if (const size_t support = model.uniform_support(); support > 0) {
    return static_cast<double>(support);
  }
  std::vector<std::string> history(static_cast<size_t>(model.order() - 1),
                                   std::string(KNModel::kBos));
  double total = 0.0;
  for (const auto& token : sentence) {
    total += model.logprob(history, token);
    history.push_back(token);
  }
  total += model.logprob(history, KNModel::kEos);
  const double n = static_cast<double>(sentence.size() + 1);
  return std::exp(-total / n);
}

}  // namespace simplify
