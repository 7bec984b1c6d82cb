#include "simplify/metrics.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "simplify/complexity.h"
#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/tokenizer.h"

namespace simplify {
namespace {

using Counter = std::map<std::string, long long>;

Counter ngram_counts(std::span<const std::string> tokens, size_t n,
                     long long scale) {
  Counter out;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string g = tokens[i];
    for (size_t k = 1; k < n; ++k) {
      g += ' ';
      g += tokens[i + k];
    }
    out[g] += scale;
  }
  return out;
}

long long get(const Counter& c, const std::string& g) {
  auto it = c.find(g);
  return it == c.end() ? 0 : it->second;
}

Counter intersect(const Counter& a, const Counter& b) {
  Counter out;
  for (const auto& [g, n] : a) {
    const long long m = std::min(n, get(b, g));
    if (m > 0) out[g] = m;
  }
  return out;
}

Counter subtract(const Counter& a, const Counter& b) {
  Counter out;
  for (const auto& [g, n] : a) {
    const long long m = n - get(b, g);
    if (m > 0) out[g] = m;
  }
  return out;
}

double f1(double p, double r) {
  return (p > 0.0 || r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
}

SariComponents sari_order(std::span<const std::string> source,
                          std::span<const std::string> candidate,
                          std::span<const Sentence> references, size_t n,
                          SariVariant variant) {
  const bool consistent = variant == SariVariant::kConsistent;
  const long long numref = static_cast<long long>(references.size());
  const Counter s = ngram_counts(source, n, numref);
  const Counter c = ngram_counts(candidate, n, numref);
  Counter r;
  for (const auto& ref : references) {
    for (const auto& [g, k] : ngram_counts(ref, n, 1)) r[g] += k;
  }
  SariComponents out;

  const Counter keep_rep = intersect(s, c);
  const Counter keep_good = intersect(keep_rep, r);
  const Counter keep_all = intersect(s, r);
  if (consistent && keep_rep.empty() && keep_all.empty()) {
    out.keep = 1.0;
  } else {
    double t1 = 0.0, t2 = 0.0;
    for (const auto& [g, k] : keep_rep) {
      const double good = static_cast<double>(get(keep_good, g));
      t1 += good / static_cast<double>(k);
      if (const long long all = get(keep_all, g); all > 0) {
        t2 += good / static_cast<double>(all);
      }
    }
    const double p = keep_rep.empty() ? 0.0 : t1 / static_cast<double>(keep_rep.size());
    const double rc = keep_all.empty() ? 0.0 : t2 / static_cast<double>(keep_all.size());
    out.keep = f1(p, rc);
  }

  const Counter del_rep = subtract(s, c);
  const Counter del_all = subtract(s, r);
  const Counter del_good =
      consistent ? intersect(del_rep, del_all) : subtract(del_rep, r);
  if (consistent && del_rep.empty() && del_all.empty()) {
    out.del = 1.0;
  } else {
    double d = 0.0;
    for (const auto& [g, k] : del_rep) {
      d += static_cast<double>(get(del_good, g)) / static_cast<double>(k);
    }
    out.del = del_rep.empty() ? 0.0 : d / static_cast<double>(del_rep.size());
  }

  std::set<std::string> add, add_all;
  for (const auto& [g, _] : c) {
    if (!s.contains(g)) add.insert(g);
  }
  for (const auto& [g, _] : r) {
    if (!s.contains(g)) add_all.insert(g);
  }
  if (consistent && add.empty() && add_all.empty()) {
    out.add = 1.0;
  } else {
    size_t good = 0;
    for (const auto& g : add) good += add_all.contains(g) ? 1 : 0;
    const double p = add.empty() ? 0.0 : static_cast<double>(good) / static_cast<double>(add.size());
    const double rc = add_all.empty() ? 0.0 : static_cast<double>(good) / static_cast<double>(add_all.size());
    out.add = f1(p, rc);
  }
  return out;
}

using Seq = std::vector<std::string>;

Seq shifted(const Seq& seq, size_t start, size_t len, size_t dest) {
  Seq rest;
  rest.reserve(seq.size());
  rest.insert(rest.end(), seq.begin(), seq.begin() + static_cast<long>(start));
  rest.insert(rest.end(), seq.begin() + static_cast<long>(start + len), seq.end());
  Seq out(rest.begin(), rest.begin() + static_cast<long>(dest));
  out.insert(out.end(), seq.begin() + static_cast<long>(start),
             seq.begin() + static_cast<long>(start + len));
  out.insert(out.end(), rest.begin() + static_cast<long>(dest), rest.end());
  return out;
}

}  // namespace

SariResult sari(std::span<const std::string> source,
                std::span<const std::string> candidate,
                std::span<const Sentence> references, SariVariant variant) {
  if (source.empty()) throw DataError("SARI needs a non-empty source");
  if (candidate.empty()) throw DataError("SARI needs a non-empty candidate");
  if (references.empty()) throw DataError("SARI needs at least one reference");
  SariResult result;
  double keep = 0.0, del = 0.0, add = 0.0;
  for (size_t n = 1; n <= 4; ++n) {
    const SariComponents c = sari_order(source, candidate, references, n, variant);
    result.per_order[n - 1] = c;
    keep += c.keep;
    del += c.del;
    add += c.add;
  }
  result.overall = 100.0 * (keep / 4.0 + del / 4.0 + add / 4.0) / 3.0;
  return result;
}

double fkgl(std::span<const Sentence> sentences) {
  if (sentences.empty()) throw DataError("FKGL needs at least one sentence");
  double words = 0.0, syllables = 0.0;
  for (const auto& s : sentences) {
    for (const auto& t : s) {
      if (is_punctuation(t)) continue;
      words += 1.0;
      syllables += count_syllables(t);
    }
  }
  if (words == 0.0) throw DataError("FKGL needs at least one word");
  return 0.39 * (words / static_cast<double>(sentences.size())) +
         11.8 * (syllables / words) - 15.59;
}

size_t levenshtein_tokens(std::span<const std::string> a,
                          std::span<const std::string> b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

TerResult ter(std::span<const std::string> hypothesis,
              std::span<const std::string> reference) {
  if (reference.empty()) throw DataError("TER needs a non-empty reference");
  Seq hyp(hypothesis.begin(), hypothesis.end());
  const Seq ref(reference.begin(), reference.end());
  size_t distance = levenshtein_tokens(hyp, ref);
  size_t shifts = 0;
  while (distance > 1) {
    size_t best = distance;
    Seq best_seq;
    for (size_t start = 0; start < hyp.size(); ++start) {
      for (size_t len = 1; len <= kMaxShiftBlock && start + len <= hyp.size(); ++len) {
        // Only blocks that occur in the reference, moved to start where one
        // of their occurrences starts.
        for (size_t j = 0; j + len <= ref.size(); ++j) {
          if (!std::equal(hyp.begin() + static_cast<long>(start),
                          hyp.begin() + static_cast<long>(start + len),
                          ref.begin() + static_cast<long>(j))) {
            continue;
          }
          const size_t dest = std::min(j, hyp.size() - len);
          if (dest == start) continue;
          Seq candidate = shifted(hyp, start, len, dest);
          const size_t d = levenshtein_tokens(candidate, ref);
          if (d < best) {
            best = d;
            best_seq = std::move(candidate);
          }
        }
      }
    }
    if (best + 1 >= distance) break;
    hyp = std::move(best_seq);
    distance = best;
    ++shifts;
  }
  TerResult r;
  r.shifts = shifts;
  r.edits = shifts + distance;
  r.ref_length = ref.size();
  r.score = static_cast<double>(r.edits) / static_cast<double>(r.ref_length);
  return r;
}

CorpusStats corpus_stats(std::span<const Sentence> outputs,
                         std::span<const Sentence> inputs) {
  if (outputs.size() != inputs.size()) {
    throw DataError("corpus_stats: " + std::to_string(outputs.size()) +
                    " outputs for " + std::to_string(inputs.size()) + " inputs");
  }
  if (outputs.empty()) throw DataError("corpus_stats needs at least one sentence");
  CorpusStats stats;
  double tokens = 0.0, ter_sum = 0.0, ins = 0.0;
  for (size_t i = 0; i < outputs.size(); ++i) {
    tokens += static_cast<double>(outputs[i].size());
    ter_sum += ter(outputs[i], inputs[i]).score;
    const std::set<std::string> in(inputs[i].begin(), inputs[i].end());
    const std::set<std::string> out(outputs[i].begin(), outputs[i].end());
    for (const auto& t : out) ins += in.contains(t) ? 0.0 : 1.0;
  }
  const double n = static_cast<double>(outputs.size());
  stats.avg_length = tokens / n;
  stats.fkgl = fkgl(outputs);
  stats.avg_ter_vs_input = ter_sum / n;
  stats.avg_insertions = ins / n;
  return stats;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

std::vector<std::string> report_cells(const SystemReport& r) {
  return {r.system,
          fixed(r.sari, 2),
          r.oracle_sari ? fixed(*r.oracle_sari, 2) : "",
          fixed(r.stats.avg_length, 2),
          fixed(r.stats.fkgl, 2),
          fixed(r.stats.avg_ter_vs_input, 3),
          fixed(r.stats.avg_insertions, 2),
          r.edit ? fixed(*r.edit, 2) : ""};
}

const std::vector<std::string> kReportHeader = {"system", "SARI", "Oracle", "Len",
                                                "FKGL",   "TER",  "Ins",    "Edit"};

}  // namespace

std::string format_report_tsv(std::span<const SystemReport> rows) {
  std::string out = io::join(kReportHeader, "\t") + '\n';
  for (const auto& r : rows) out += io::join(report_cells(r), "\t") + '\n';
  return out;
}

std::string format_report_table(std::span<const SystemReport> rows) {
  std::vector<std::vector<std::string>> cells{kReportHeader};
  for (const auto& r : rows) cells.push_back(report_cells(r));
  std::vector<size_t> width(kReportHeader.size(), 0);
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (size_t r = 0; r < cells.size(); ++r) {
    for (size_t i = 0; i < cells[r].size(); ++i) {
      const std::string& c = cells[r][i];
      const std::string pad(width[i] - c.size(), ' ');
      out += i == 0 ? c + pad : "  " + pad + c;
    }
    out += '\n';
    if (r == 0) {
      size_t total = 0;
      for (size_t w : width) total += w + 2;
      out += std::string(total - 2, '-') + '\n';
    }
  }
  return out;
}

}  // namespace simplify
