#include "simplify/desk_data.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "simplify/complexity.h"
#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/rng.h"
#include "simplify/tokenizer.h"

namespace simplify::desk {
namespace {

constexpr std::array<const char*, 18> kOnsets = {
    "b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st", "pl", "tr"};
constexpr std::array<const char*, 5> kVowels = {"a", "e", "i", "o", "u"};
constexpr std::array<const char*, 6> kCodas = {"", "", "n", "r", "s", "l"};

std::string pseudo_word(Rng& rng, int syllables) {
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w += kOnsets[rng.index(kOnsets.size())];
    w += kVowels[rng.index(kVowels.size())];
    w += kCodas[rng.index(kCodas.size())];
  }
  return w;
}

std::string unique_word(Rng& rng, int syllables, std::set<std::string>& used) {
  for (;;) {
    std::string w = pseudo_word(rng, syllables);
    if (!is_stopword(w) && used.insert(w).second) return w;
  }
}

std::vector<double> unit_direction(uint64_t seed) {
  Rng rng(seed);
  std::vector<double> u(kEmbeddingDim);
  double norm = 0.0;
  for (double& x : u) {
    x = rng.normal();
    norm += x * x;
  }
  for (double& x : u) x /= std::sqrt(norm);
  return u;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

SyntheticLexicon make_lexicon(size_t words, uint64_t seed) {
  SyntheticLexicon lex;
  Rng rng(seed);
  const std::vector<double> direction = unit_direction(mix64(seed + 1));
  std::set<std::string> used;
  for (size_t i = 0; i < words; ++i) {
    const double z = rng.uniform(0.0, 4.0);
    const int syllables =
        std::clamp(1 + static_cast<int>(std::floor(0.45 * z + rng.uniform(0.0, 1.8))), 1, 5);
    const std::string word = unique_word(rng, syllables, used);

    const double base = std::exp(rng.uniform(std::log(5.0), std::log(20000.0)));
    LevelCounts counts{};
    for (int level = 0; level < kNumLevels; ++level) {
      const double retention =
          level == kOriginalLevel ? 1.0 : sigmoid(4.0 * (level + 0.5 - z));
      const double noise = rng.uniform(0.75, 1.25);
      counts[level] = static_cast<int64_t>(std::llround(base * retention * noise));
    }
    counts[kOriginalLevel] = std::max<int64_t>(counts[kOriginalLevel], 1);
    lex.counts.set(word, counts);
    lex.latent[word] = z;

    std::vector<double> v(kEmbeddingDim);
    const double signal = 0.9 * (z - 2.0) / 2.0;
    for (size_t d = 0; d < kEmbeddingDim; ++d) {
      v[d] = signal * direction[d] + rng.normal(0.0, 0.35);
    }
    lex.embeddings.set(word, std::move(v));
  }
  return lex;
}

std::vector<LabeledSentence> make_leveled_sentences(
    const SyntheticLexicon& lexicon, size_t count, uint64_t seed) {
  std::array<std::vector<std::string>, kNumLevels> by_level;
  for (const auto& [word, row] : lexicon.counts) {
    by_level[static_cast<size_t>(label_from_counts(row))].push_back(word);
  }
  for (const auto& bucket : by_level) {
    if (bucket.empty()) throw DataError("lexicon lacks words at some level");
  }
  Rng rng(seed);
  std::vector<LabeledSentence> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    const int level = static_cast<int>(rng.index(kNumLevels));
    const int length = std::clamp(
        static_cast<int>(std::lround(7.0 + 0.5 * level + rng.normal(0.0, 2.2))), 3, 18);
    LabeledSentence s;
    s.level = level;
    for (int t = 0; t < length; ++t) {
      const int from = rng.uniform() < 0.6 ? level : static_cast<int>(rng.index(level + 1));
      const auto& bucket = by_level[static_cast<size_t>(from)];
      s.tokens.push_back(bucket[rng.index(bucket.size())]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

SynonymCorpus make_synonym_corpus(size_t pairs, double complex_share,
                                  uint64_t seed) {
  constexpr size_t kConcepts = 10;
  Rng rng(seed);
  std::set<std::string> used;
  std::vector<std::string> simple, complex;
  SynonymCorpus corpus;
  for (size_t c = 0; c < kConcepts; ++c) {
    simple.push_back(unique_word(rng, 1, used));
    complex.push_back(unique_word(rng, 4, used));
    corpus.complexity[simple.back()] = {0.5, true};
    corpus.complexity[complex.back()] = {3.5, true};
  }
  const std::array<std::string, 3> frame = {"the", "of the", "and a"};
  for (const char* t : {"the", "of", "and", "a", ".", "</s>", "<s>", "<unk>"}) {
    corpus.complexity[t] = {0.0, false};
  }
  for (size_t i = 0; i < pairs; ++i) {
    std::vector<size_t> concepts(kConcepts);
    for (size_t c = 0; c < kConcepts; ++c) concepts[c] = c;
    rng.shuffle(std::span<size_t>(concepts));
    std::string source, target;
    for (size_t k = 0; k < frame.size(); ++k) {
      const size_t c = concepts[k];
      const bool keep_complex = rng.uniform() < complex_share;
      source += frame[k] + ' ' + complex[c] + ' ';
      target += frame[k] + ' ' + (keep_complex ? complex[c] : simple[c]) + ' ';
    }
    corpus.pair_lines.push_back("4\t0\t" + source + ".\t" + target + ".");
  }
  return corpus;
}

namespace {

struct Synonym {
  const char* simple;
  const char* complex;
};

constexpr std::array<Synonym, 8> kSubjects = {{{"people", "individuals"},
                                               {"workers", "employees"},
                                               {"towns", "municipalities"},
                                               {"doctors", "physicians"},
                                               {"buyers", "purchasers"},
                                               {"leaders", "executives"},
                                               {"farmers", "agriculturalists"},
                                               {"schools", "institutions"}}};
constexpr std::array<Synonym, 10> kVerbs = {{{"need", "require"},
                                             {"use", "utilize"},
                                             {"buy", "purchase"},
                                             {"build", "construct"},
                                             {"want", "desire"},
                                             {"find", "locate"},
                                             {"get", "obtain"},
                                             {"make", "manufacture"},
                                             {"keep", "retain"},
                                             {"fix", "repair"}}};
constexpr std::array<Synonym, 8> kAdjectives = {{{"big", "enormous"},
                                                 {"new", "innovative"},
                                                 {"cheap", "inexpensive"},
                                                 {"fast", "rapid"},
                                                 {"old", "antiquated"},
                                                 {"small", "diminutive"},
                                                 {"good", "exceptional"},
                                                 {"safe", "secure"}}};
constexpr std::array<Synonym, 10> kObjects = {{{"cars", "automobiles"},
                                               {"homes", "residences"},
                                               {"tools", "instruments"},
                                               {"jobs", "occupations"},
                                               {"plans", "strategies"},
                                               {"roads", "thoroughfares"},
                                               {"boats", "vessels"},
                                               {"books", "publications"},
                                               {"drugs", "medications"},
                                               {"machines", "apparatuses"}}};
constexpr std::array<Synonym, 5> kAdverbs = {{{"now", "currently"},
                                              {"often", "frequently"},
                                              {"also", "additionally"},
                                              {"soon", "eventually"},
                                              {"quickly", "expeditiously"}}};
constexpr std::array<Synonym, 4> kReasons = {{{"growth", "expansion"},
                                              {"rules", "regulations"},
                                              {"costs", "expenditures"},
                                              {"demand", "consumption"}}};
constexpr std::array<Synonym, 3> kSources = {{{"experts", "specialists"},
                                              {"reports", "analyses"},
                                              {"officials", "administrators"}}};
constexpr Synonym kQuantifier = {"many", "numerous"};
constexpr std::array<const char*, 7> kPlaces = {
    "New York", "Chicago", "Texas", "Los Angeles", "Ohio", "Boston", "Mexico City"};
constexpr std::array<const char*, 6> kNumbers = {"300", "12", "4,000", "45", "7", "250"};

// Probability that a slot uses its complex synonym, and that each optional
// part appears, by level.
constexpr std::array<double, kNumLevels> kComplexWord = {0.0, 0.1, 0.25, 0.5, 1.0};
constexpr std::array<double, kNumLevels> kOpener = {0.0, 0.0, 0.1, 0.5, 1.0};
constexpr std::array<double, kNumLevels> kQuantified = {0.2, 0.3, 0.5, 0.7, 1.0};
constexpr std::array<double, kNumLevels> kAdverb = {0.1, 0.2, 0.4, 0.7, 1.0};
constexpr std::array<double, kNumLevels> kAdjective = {0.5, 0.6, 0.7, 0.85, 1.0};
constexpr std::array<double, kNumLevels> kReason = {0.0, 0.0, 0.15, 0.5, 1.0};

struct Frame {
  size_t subject, verb, adjective, object, adverb, reason, reason_adjective,
      source, place, number;
};

Frame random_frame(Rng& rng) {
  return {rng.index(kSubjects.size()), rng.index(kVerbs.size()),
          rng.index(kAdjectives.size()), rng.index(kObjects.size()),
          rng.index(kAdverbs.size()), rng.index(kReasons.size()),
          rng.index(kAdjectives.size()), rng.index(kSources.size()),
          rng.index(kPlaces.size()), rng.index(kNumbers.size())};
}

std::string render(const Frame& f, int level, uint64_t seed) {
  Rng rng(seed);
  const auto lvl = static_cast<size_t>(level);
  auto pick = [&](const Synonym& s) {
    return std::string(rng.uniform() < kComplexWord[lvl] ? s.complex : s.simple);
  };
  auto chance = [&](const std::array<double, kNumLevels>& p) {
    return rng.uniform() < p[lvl];
  };
  std::vector<std::string> words;
  if (chance(kOpener)) {
    words.insert(words.end(), {"according", "to", "the", pick(kSources[f.source]), ","});
  }
  if (chance(kQuantified)) words.push_back(pick(kQuantifier));
  words.push_back(pick(kSubjects[f.subject]));
  words.push_back("in");
  words.push_back(kPlaces[f.place]);
  if (chance(kAdverb)) words.push_back(pick(kAdverbs[f.adverb]));
  words.push_back(pick(kVerbs[f.verb]));
  words.push_back(kNumbers[f.number]);
  if (chance(kAdjective)) words.push_back(pick(kAdjectives[f.adjective]));
  words.push_back(pick(kObjects[f.object]));
  if (chance(kReason)) {
    words.insert(words.end(), {"because", "of", "the",
                               pick(kAdjectives[f.reason_adjective]),
                               pick(kReasons[f.reason])});
  }
  words.push_back(".");
  std::string text;
  for (const auto& w : words) {
    if (!text.empty() && w != "," && w != ".") text += ' ';
    text += w;
  }
  text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  return text;
}

uint64_t render_seed(uint64_t seed, size_t frame, int level) {
  return mix64(seed ^ mix64(frame * 8 + static_cast<size_t>(level) + 0x51ed));
}

}  // namespace

EnglishCorpus make_english_corpus(size_t documents, size_t pairs, uint64_t seed) {
  constexpr size_t kFramesPerDocument = 4;
  EnglishCorpus corpus;
  Rng rng(seed);

  size_t frame_id = 0;
  for (size_t d = 0; d < documents; ++d) {
    std::vector<Frame> frames;
    for (size_t k = 0; k < kFramesPerDocument; ++k) frames.push_back(random_frame(rng));
    for (int level = kOriginalLevel; level >= 0; --level) {
      for (size_t k = 0; k < frames.size(); ++k) {
        const std::string text = render(frames[k], level, render_seed(seed, frame_id + k, level));
        corpus.leveled_lines.push_back(std::to_string(level) + "\tdoc" +
                                       std::to_string(d + 1) + '\t' + text);
        if (level <= 2) corpus.lm_lines.push_back(text);
      }
    }
    frame_id += frames.size();
  }

  for (size_t p = 0; p < pairs; ++p, ++frame_id) {
    const Frame frame = random_frame(rng);
    const int complex_level = rng.uniform() < 0.8 ? 4 : 3;
    const int simple_level = rng.uniform() < 0.1
                                 ? complex_level - 1
                                 : static_cast<int>(rng.index(static_cast<uint64_t>(complex_level - 1)));
    corpus.pair_lines.push_back(
        std::to_string(complex_level) + '\t' + std::to_string(simple_level) + '\t' +
        render(frame, complex_level, render_seed(seed, frame_id, complex_level)) + '\t' +
        render(frame, simple_level, render_seed(seed, frame_id, simple_level)));
  }

  // Synonyms share a concept vector; a common direction separates simple
  // from complex forms.
  const std::vector<double> direction = unit_direction(mix64(seed + 7));
  Rng vec_rng(mix64(seed + 11));
  auto add_word = [&](const std::string& word, std::span<const double> meaning,
                      double complexity) {
    if (corpus.embeddings.find(word)) return;
    std::vector<double> v(kEmbeddingDim);
    for (size_t i = 0; i < kEmbeddingDim; ++i) {
      v[i] = meaning[i] + complexity * direction[i] + vec_rng.normal(0.0, 0.2);
    }
    corpus.embeddings.set(word, std::move(v));
  };
  auto random_concept = [&]() {
    std::vector<double> c(kEmbeddingDim);
    for (double& x : c) x = vec_rng.normal(0.0, 0.8);
    return c;
  };
  auto add_synonym = [&](const Synonym& s) {
    const auto meaning = random_concept();
    add_word(s.simple, meaning, -0.6);
    add_word(s.complex, meaning, 0.6);
  };
  for (const auto& s : kSubjects) add_synonym(s);
  for (const auto& s : kVerbs) add_synonym(s);
  for (const auto& s : kAdjectives) add_synonym(s);
  for (const auto& s : kObjects) add_synonym(s);
  for (const auto& s : kAdverbs) add_synonym(s);
  for (const auto& s : kReasons) add_synonym(s);
  for (const auto& s : kSources) add_synonym(s);
  add_synonym(kQuantifier);
  for (const char* w : {"in", "to", "the", "of", ",", "."}) add_word(w, random_concept(), -0.6);
  for (const char* w : {"according", "because"}) add_word(w, random_concept(), 0.6);
  return corpus;
}

namespace {

std::string joined_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + '\n';
  return out;
}

// Paths in the configuration are relative to the configuration file.
std::string desk_config(const std::filesystem::path& data_dir,
                        const std::filesystem::path& config_path) {
  namespace fs = std::filesystem;
  const fs::path base = fs::absolute(config_path).parent_path();
  const fs::path data = fs::absolute(data_dir).lexically_relative(base);
  const fs::path out = (fs::absolute(data_dir).parent_path().parent_path() / "out" / "desk")
                           .lexically_normal()
                           .lexically_relative(base);
  auto path = [&](const fs::path& p) { return "\"" + p.generic_string() + "\""; };
  std::string text = "{\n";
  text += "  \"paths.leveled_corpus\": " + path(data / "leveled.tsv") + ",\n";
  text += "  \"paths.pairs\": " + path(data / "pairs.tsv") + ",\n";
  text += "  \"paths.embeddings\": " + path(data / "embeddings.txt") + ",\n";
  text += "  \"paths.lm_corpus\": " + path(data / "lm_corpus.txt") + ",\n";
  text += "  \"paths.output_dir\": " + path(out) + ",\n";
  text += R"(  "decode.beam": 100,
  "decode.delta": 1.0,
  "decode.max_len": 30,
  "cluster.k": 20,
  "rerank.weights": "fa",
  "loss.alpha": 2.0,
  "lm.order": 5,
  "scorer.epochs": 30,
  "sentence.epochs": 10,
  "seed": 1
}
)";
  return text;
}

}  // namespace

std::vector<std::filesystem::path> write_all(const std::filesystem::path& data_dir,
                                             const std::filesystem::path& config_path,
                                             uint64_t seed) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& path, std::string_view text) {
    io::write_file(path, text);
    written.push_back(path);
  };

  const SyntheticLexicon lexicon = make_lexicon(2400, mix64(seed + 100));
  emit(data_dir / "lexicon_counts.tsv", format_word_counts(lexicon.counts));
  emit(data_dir / "lexicon_embeddings.txt", format_embedding_table(lexicon.embeddings));

  std::vector<std::string> sentence_lines;
  const auto sentences = make_leveled_sentences(lexicon, 1000, mix64(seed + 200));
  for (size_t i = 0; i < sentences.size(); ++i) {
    sentence_lines.push_back(std::to_string(static_cast<int>(sentences[i].level)) + "\ts" +
                             std::to_string(i + 1) + '\t' + io::join(sentences[i].tokens, " "));
  }
  emit(data_dir / "leveled_sentences.tsv", joined_lines(sentence_lines));

  const SynonymCorpus synonyms = make_synonym_corpus(240, 0.55, mix64(seed + 300));
  emit(data_dir / "synonym_pairs.tsv", joined_lines(synonyms.pair_lines));
  std::map<std::string, double> synonym_scores;
  for (const auto& [token, entry] : synonyms.complexity) {
    if (entry.is_content) synonym_scores[token] = entry.score;
  }
  emit(data_dir / "synonym_complexity.tsv", format_lexicon(synonym_scores));

  const EnglishCorpus english = make_english_corpus(80, 520, mix64(seed + 400));
  emit(data_dir / "leveled.tsv", joined_lines(english.leveled_lines));
  emit(data_dir / "pairs.tsv", joined_lines(english.pair_lines));
  emit(data_dir / "lm_corpus.txt", joined_lines(english.lm_lines));
  emit(data_dir / "embeddings.txt", format_embedding_table(english.embeddings));

  emit(config_path, desk_config(data_dir, config_path));
  return written;
}

}  // namespace simplify::desk
