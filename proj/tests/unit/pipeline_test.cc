#include <gtest/gtest.h>

#include <filesystem>
#include <nlohmann/json.hpp>

#include "simplify/desk_data.h"
#include "simplify/error.h"
#include "simplify/io.h"
#include "simplify/pipeline.h"

namespace fs = std::filesystem;

namespace simplify {
namespace {

const fs::path kData = SIMPLIFY_DATA_DIR;
const fs::path kConfig = SIMPLIFY_CONFIG_PATH;
const fs::path kWork = SIMPLIFY_WORK_DIR;

std::string minimal(const std::string& extra = "") {
  return R"({"paths.leveled_corpus": "leveled.tsv", "paths.pairs": "pairs.tsv",
             "paths.embeddings": "embeddings.txt")" + extra + "}";
}

TEST(Config, MinimalGetsDefaults) {
  const auto c = parse_config(minimal(), kData);
  EXPECT_EQ(c.beam, 100);
  EXPECT_EQ(c.delta, 1.0);
  EXPECT_EQ(c.clusters, 20);
  EXPECT_EQ(c.alpha, 2.0);
  EXPECT_DOUBLE_EQ(c.weights.fluency, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.weights.simplicity, 1.0 / 3.0);
  EXPECT_EQ(c.pairs, kData / "pairs.tsv");
}

TEST(Config, WeightPresetsAndValidation) {
  const auto fa = parse_config(minimal(R"(, "rerank.weights": "FA")"), kData);
  EXPECT_EQ(fa.weights.fluency, 0.5);
  EXPECT_EQ(fa.weights.adequacy, 0.5);
  EXPECT_EQ(fa.weights.simplicity, 0.0);
  EXPECT_THROW(parse_config(minimal(R"(, "rerank.weights": [0.5, 0.5, 0.1])"), kData),
               ConfigError);
  EXPECT_THROW(parse_weights("0.5,0.5,0.1"), ConfigError);
  EXPECT_EQ(parse_weights("0.2,0.3,0.5").simplicity, 0.5);
}

void expect_config_error(const std::string& json, const std::string& mention) {
  try {
    parse_config(json, kData);
    FAIL() << "accepted: " << json;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(mention), std::string::npos) << e.what();
  }
}

TEST(Config, ErrorsNameTheField) {
  expect_config_error(minimal(R"(, "decode.beems": 3)"), "decode.beems");
  expect_config_error(minimal(R"(, "decode.beam": 0)"), "decode.beam");
  expect_config_error(minimal(R"(, "cluster.k": 200)"), "cluster.k");
  expect_config_error(minimal(R"(, "loss.alpha": -1)"), "loss.alpha");
  expect_config_error(R"({"paths.leveled_corpus": "missing.tsv", "paths.pairs": "pairs.tsv",
                          "paths.embeddings": "embeddings.txt"})",
                      "paths.leveled_corpus");
}

TEST(Config, SnapshotOmitsOutputDirectory) {
  auto a = load_config(kConfig);
  auto b = a;
  b.output_dir = "/somewhere/else";
  EXPECT_EQ(config_snapshot(a), config_snapshot(b));
  EXPECT_EQ(config_snapshot(a).find("out/desk"), std::string::npos);
}

TEST(Variants, SevenNamedConfigurations) {
  const auto& all = named_variants();
  ASSERT_EQ(all.size(), 7u);
  const auto& full = find_variant("S2S-All-FA");
  EXPECT_EQ(full.loss, LossMode::kWeighted);
  EXPECT_TRUE(full.beam && full.diverse && full.cluster);
  EXPECT_EQ(full.weights.simplicity, 0.0);
  EXPECT_EQ(find_variant("S2S-All-FAS").weights.simplicity, 1.0 / 3.0);
  EXPECT_FALSE(find_variant("S2S").beam);
  EXPECT_THROW(find_variant("S2S-Nope"), ConfigError);
}

PipelineConfig small_run(const fs::path& out) {
  auto c = load_config(kConfig);
  c.output_dir = out;
  c.beam = 12;
  c.clusters = 4;
  c.max_len = 20;
  c.scorer_config.epochs = 3;
  c.sentence_config.epochs = 2;
  c.variants = {"S2S", "S2S-FA", "S2S-All-FA"};
  return c;
}

TEST(Pipeline, SmallRunWritesDigestedArtifacts) {
  const fs::path out = kWork / "unit_small_run";
  fs::remove_all(out);
  const auto manifest = run_pipeline(small_run(out));
  ASSERT_EQ(manifest.variants.size(), 3u);
  for (const auto& [name, digest] : manifest.digests) {
    EXPECT_EQ(io::sha256_hex(io::read_file(out / name)), digest) << name;
  }
  for (const char* f : {"report.tsv", "manifest.json", "timings.json", "outputs_S2S-All-FA.txt",
                        "candidates_S2S-FA.jsonl", "scored_S2S-All-FA.jsonl"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  for (const auto& v : manifest.variants) {
    for (const auto& s : v.sentences) {
      EXPECT_GE(s.oracle_sari, s.selected_sari);
      EXPECT_FALSE(s.ranked.empty());
    }
  }
  const auto scored = io::read_lines(out / "scored_S2S-All-FA.jsonl");
  const auto line = nlohmann::json::parse(scored.front());
  EXPECT_TRUE(line.contains("source"));
  EXPECT_TRUE(line.contains("selected"));
  for (const char* key : {"tokens", "logprob", "ppl", "cos", "complexity", "final"}) {
    EXPECT_TRUE(line["candidates"][0].contains(key)) << key;
  }
  const auto manifest_json = nlohmann::json::parse(io::read_file(out / "manifest.json"));
  EXPECT_TRUE(manifest_json.contains("outputs"));
  EXPECT_TRUE(manifest_json.contains("seeds"));
}

TEST(Pipeline, GreedyVariantHasSingleCandidate) {
  const fs::path out = kWork / "unit_greedy";
  fs::remove_all(out);
  auto c = small_run(out);
  c.variants = {"S2S"};
  const auto manifest = run_pipeline(c);
  for (const auto& s : manifest.variants[0].sentences) {
    EXPECT_EQ(s.decoded.size(), 1u);
    EXPECT_EQ(s.selected_sari, s.oracle_sari);
  }
}

TEST(DeskData, RegeneratesBundledFilesExactly) {
  const fs::path root = kWork / "unit_desk_regen";
  fs::remove_all(root);
  const auto written = desk::write_all(root / "data" / "desk", root / "configs" / "desk.json", 1);
  ASSERT_FALSE(written.empty());
  for (const auto& path : written) {
    const auto rel = fs::relative(path, root);
    const fs::path bundled = kData.parent_path().parent_path() / rel;
    ASSERT_TRUE(fs::exists(bundled)) << rel;
    EXPECT_TRUE(io::read_file(path) == io::read_file(bundled)) << rel;
  }
}

TEST(DeskData, SizesMatchDocumentation) {
  EXPECT_GE(io::read_lines(kData / "lexicon_counts.tsv").size(), 2000u);
  EXPECT_EQ(io::read_lines(kData / "pairs.tsv").size(), 520u);
  const auto lexicon = desk::make_lexicon(50, 3);
  EXPECT_EQ(lexicon.counts.size(), 50u);
  EXPECT_EQ(lexicon.embeddings.size(), 50u);
}

}  // namespace
}  // namespace simplify
