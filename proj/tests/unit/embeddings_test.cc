#include <gtest/gtest.h>

#include <cmath>

#include "simplify/embeddings.h"
#include "simplify/error.h"

namespace simplify {
namespace {

TEST(EmbeddingTable, ParsesWithAndWithoutHeader) {
  const auto plain = parse_embedding_table({"a 1 2 3", "b 4 5 6"});
  EXPECT_EQ(plain.size(), 2u);
  EXPECT_EQ(plain.dimension(), 3u);
  const auto headed = parse_embedding_table({"2 3", "a 1 2 3", "b 4 5 6"});
  EXPECT_EQ(headed.size(), 2u);
  EXPECT_EQ(*headed.find("b"), (std::vector<double>{4, 5, 6}));
}

TEST(EmbeddingTable, BadLineNamesLine) {
  try {
    parse_embedding_table({"a 1 2 3", "b 4 5"});
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_embedding_table({}), DataError);
}

TEST(EmbeddingTable, DuplicatesLastWins) {
  const auto t = parse_embedding_table({"a 1 1", "a 2 2"});
  EXPECT_EQ(*t.find("a"), (std::vector<double>{2, 2}));
  EXPECT_EQ(t.duplicate_count(), 1u);
}

TEST(EmbeddingTable, FormatRoundTrip) {
  const auto t = parse_embedding_table({"b 0.1 -2", "a 3 4.5"});
  const auto text = format_embedding_table(t);
  std::vector<std::string> lines;
  for (size_t s = 0, e; s < text.size(); s = e + 1) {
    e = text.find('\n', s);
    lines.push_back(text.substr(s, e - s));
  }
  const auto back = parse_embedding_table(lines);
  EXPECT_EQ(*back.find("a"), *t.find("a"));
  EXPECT_EQ(*back.find("b"), *t.find("b"));
}

TEST(EmbedSentence, UniformMean) {
  const auto t = parse_embedding_table({"u 1 0", "v 0 1"});
  EXPECT_EQ(embed_sentence(t, std::vector<std::string>{"u"}).values, (std::vector<double>{1, 0}));
  const auto pair = embed_sentence(t, std::vector<std::string>{"u", "oov", "v"});
  EXPECT_EQ(pair.values, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(pair.token_count, 2u);
  EXPECT_TRUE(embed_sentence(t, std::vector<std::string>{"oov"}).is_zero());
  EXPECT_TRUE(embed_sentence(t, std::vector<std::string>{}).is_zero());
}

TEST(EmbedSentence, IdfWeightedMean) {
  const auto t = parse_embedding_table({"a 1 0", "b 0 1"});
  const DocumentFrequency df({{"a", 1}, {"b", 10}}, 10);
  const double wa = std::log(11.0 / 2.0) + 1.0;
  const double wb = std::log(11.0 / 11.0) + 1.0;
  const auto v = embed_sentence(t, std::vector<std::string>{"a", "b"}, Weighting::kIdf, &df);
  EXPECT_NEAR(v.values[0], wa / (wa + wb), 1e-12);
  EXPECT_NEAR(v.values[1], wb / (wa + wb), 1e-12);
}

TEST(DocumentFrequency, CountAndParse) {
  const auto df = count_document_frequency({{"a", "b", "a"}, {"b"}});
  EXPECT_EQ(df.documents(), 2);
  EXPECT_EQ(df.count("a"), 1);
  EXPECT_EQ(df.count("b"), 2);
  const auto parsed = parse_document_frequency({"a\t1", "b\t2", "__N__\t2"});
  EXPECT_EQ(parsed.count("b"), 2);
  EXPECT_EQ(parsed.documents(), 2);
}

TEST(Cosine, Conventions) {
  const std::vector<double> u = {1, 0}, w = {1, 1}, zero = {0, 0}, o = {0, 3};
  EXPECT_DOUBLE_EQ(cosine_similarity(u, u), 1.0);
  EXPECT_EQ(cosine_similarity(u, o), 0.0);
  EXPECT_NEAR(cosine_similarity(u, w), 0.70711, 1e-5);
  EXPECT_EQ(cosine_similarity(u, zero), 0.0);
  EXPECT_THROW(cosine_similarity(u, std::vector<double>{1, 2, 3}), DataError);
}

TEST(MeanEmbedder, SelfSimilarityIsOne) {
  const auto t = parse_embedding_table({"a 1 2", "b -1 0.5", "c 3 -2"});
  const MeanEmbedder embedder(t, Weighting::kUniform);
  const std::vector<std::string> s = {"a", "c", "b"};
  const auto v = embedder.embed(s);
  EXPECT_NEAR(cosine_similarity(v.values, v.values), 1.0, 1e-12);
}

}  // namespace
}  // namespace simplify
