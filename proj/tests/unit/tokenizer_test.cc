#include <gtest/gtest.h>

#include "simplify/tokenizer.h"

namespace simplify {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, SplitsPunctuationAndLowercases) {
  EXPECT_EQ(tokenize("Mary travels between two offices."),
            (Tokens{"mary", "travels", "between", "two", "offices", "."}));
}

TEST(Tokenize, Clitics) {
  EXPECT_EQ(tokenize("don't stop"), (Tokens{"do", "n't", "stop"}));
  EXPECT_EQ(tokenize("can't"), (Tokens{"ca", "n't"}));
  EXPECT_EQ(tokenize("it's"), (Tokens{"it", "'s"}));
}

TEST(Tokenize, KeepsInnerPunctuationAndAbbreviations) {
  EXPECT_EQ(tokenize_raw("Wal-Mart hired 300,000 people in the U.S."),
            (Tokens{"Wal-Mart", "hired", "300,000", "people", "in", "the", "U.S."}));
}

TEST(MaskEntities, NoEntities) {
  EXPECT_EQ(mask_entities({"the", "dog", "ran"}).surfaces(), (Tokens{"the", "dog", "ran"}));
}

TEST(MaskEntities, CapitalizedSpanBecomesOnePlaceholder) {
  const auto masked = mask_entities({"he", "met", "Mustafa", "Kemal", "Ataturk", "today"});
  EXPECT_EQ(masked.surfaces(), (Tokens{"he", "met", "ENT@1", "today"}));
  ASSERT_NE(masked.entities.lookup("ENT@1"), nullptr);
  EXPECT_EQ(*masked.entities.lookup("ENT@1"), (Tokens{"Mustafa", "Kemal", "Ataturk"}));
  EXPECT_FALSE(masked.tokens[2].is_content);
}

TEST(MaskEntities, Numbers) {
  EXPECT_EQ(mask_entities({"over", "300,000", "students"}).surfaces(),
            (Tokens{"over", "NUM@1", "students"}));
}

TEST(MaskEntities, SentenceInitialCapitalIsNotAnEntity) {
  EXPECT_EQ(mask_entities({"Doctors", "in", "Boston", "rest"}).surfaces(),
            (Tokens{"Doctors", "in", "ENT@1", "rest"}));
}

TEST(MaskEntities, SharedMapAcrossPair) {
  EntityMap map;
  const auto a = mask_entities({"They", "saw", "New", "York", "twice"}, map);
  const auto b = mask_entities({"New", "York", "is", "big", "and", "New", "York", "is", "old"}, map);
  EXPECT_EQ(a[2].surface, "ENT@1");
  EXPECT_EQ(b[5].surface, "ENT@1");
  EXPECT_EQ(map.size(), 1u);
}

TEST(Demask, RestoresSurfaceAndPassesUnknown) {
  const auto masked = prepare_sentence("Farmers in New York grow 45 apples.");
  const auto restored = demask(masked.surfaces(), masked.entities);
  EXPECT_EQ(restored, (Tokens{"farmers", "in", "New", "York", "grow", "45", "apples", "."}));
  EXPECT_EQ(demask({"ENT@9"}, masked.entities), (Tokens{"ENT@9"}));
}

TEST(ContentWords, StopwordsPunctuationPlaceholders) {
  EXPECT_TRUE(is_content_word("apples"));
  EXPECT_FALSE(is_content_word("the"));
  EXPECT_FALSE(is_content_word("."));
  EXPECT_FALSE(is_content_word("ENT@1"));
}

}  // namespace
}  // namespace simplify
