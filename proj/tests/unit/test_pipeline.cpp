// Copyright 2026 The embedtopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>

#include "embedtopics/error.hpp"
#include "embedtopics/pipeline.hpp"
#include "test_support.hpp"

namespace et = embedtopics;
namespace fs = std::filesystem;

namespace {

et::RunConfig toy_config(const fs::path& out) {
  et::RunConfig c = et::load_config(et::testing::toy_dir() / "toy.conf");
  c.seeds = {0, 1};
  c.output_dir = out;
  return c;
}

// Relative path -> contents for every regular file under `root`.
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      out[fs::relative(entry.path(), root).generic_string()] = et::testing::read_text(entry.path());
    }
  }
  return out;
}

template <typename F>
et::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const et::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an embedtopics::Error";
  return et::ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(Config, ToyFileResolvesPathsNextToIt) {
  const auto c = et::load_config(et::testing::toy_dir() / "toy.conf");
  EXPECT_EQ(c.corpus_path, (et::testing::toy_dir() / "corpus.txt").lexically_normal());
  EXPECT_EQ(c.embedding_path, (et::testing::toy_dir() / "glove.txt").lexically_normal());
  EXPECT_EQ(c.corpus_format, et::CorpusFormat::kLines);
  EXPECT_EQ(c.embedding_format, et::EmbeddingFormat::kGloveText);
  EXPECT_EQ(c.k, 4u);
  EXPECT_EQ(c.top_j, 5u);
  EXPECT_EQ(c.rerank_window, 20u);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, FileOverridesBaseAndLaterSettingsOverrideFile) {
  et::testing::TempDir dir;
  et::testing::write_text(dir / "a.conf", "# comment\n\n  k = 7  \nmax_iter=12\nseeds = 3,1\n");
  et::RunConfig base;
  base.k = 2;
  base.top_j = 4;
  auto c = et::load_config(dir / "a.conf", base);
  EXPECT_EQ(c.k, 7u);
  EXPECT_EQ(c.top_j, 4u);
  EXPECT_EQ(c.max_iter, 12u);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{3, 1}));
  et::apply_setting(c, "k", "9");
  EXPECT_EQ(c.k, 9u);
}

TEST(Config, SettingsParseEveryKey) {
  et::RunConfig c;
  et::apply_setting(c, "algorithm", "gmm");
  et::apply_setting(c, "weighting", "tf_idf");
  et::apply_setting(c, "reranking", "tf");
  et::apply_setting(c, "pca_dim", "100");
  et::apply_setting(c, "npmi-window", "0");
  et::apply_setting(c, "tol", "1e-5");
  et::apply_setting(c, "embedding-format", "word2vec_text");
  et::apply_setting(c, "corpus-format", "20ng");
  EXPECT_EQ(c.algorithm, et::ClusterKind::kGmm);
  EXPECT_EQ(c.weighting, et::WeightScheme::kTfIdf);
  EXPECT_EQ(c.reranking, et::RerankScheme::kTf);
  EXPECT_EQ(c.pca_dim, std::optional<std::size_t>(100));
  EXPECT_EQ(c.npmi_window, 0u);
  EXPECT_EQ(c.tol, std::optional<double>(1e-5));
  EXPECT_EQ(c.embedding_format, et::EmbeddingFormat::kWord2VecText);
  et::apply_setting(c, "pca-dim", "none");
  EXPECT_FALSE(c.pca_dim.has_value());
}

TEST(Config, Errors) {
  et::RunConfig c;
  EXPECT_EQ(code_of([&] { et::apply_setting(c, "k", "four"); }), et::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { et::apply_setting(c, "algorithm", "lda"); }), et::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { et::apply_setting(c, "colour", "red"); }), et::ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { et::apply_setting(c, "seeds", "1,,2"); }), et::ErrorCode::kInvalidArgument);
  et::testing::TempDir dir;
  et::testing::write_text(dir / "bad.conf", "k = 3\njust words\n");
  EXPECT_EQ(code_of([&] { et::load_config(dir / "bad.conf"); }), et::ErrorCode::kFormatError);
  EXPECT_EQ(code_of([&] { et::load_config(dir / "absent.conf"); }), et::ErrorCode::kIoError);

  auto v = toy_config(dir / "out");
  v.rerank_window = 3;
  EXPECT_EQ(code_of([&] { v.validate(); }), et::ErrorCode::kInvalidArgument);
  v = toy_config(dir / "out");
  v.seeds.clear();
  EXPECT_EQ(code_of([&] { v.validate(); }), et::ErrorCode::kInvalidArgument);
}

TEST(Run, ToyRunWritesEveryOutput) {
  et::testing::TempDir dir;
  auto c = toy_config(dir / "out");
  c.reranking = et::RerankScheme::kTf;
  const auto result = et::run(c);
  EXPECT_EQ(result.topic_sets.size(), 2u);
  EXPECT_EQ(result.report.per_seed.size(), 2u);
  EXPECT_TRUE(std::isfinite(result.report.mean));
  EXPECT_GE(result.report.mean, -1.0);
  EXPECT_LE(result.report.mean, 1.0);
  EXPECT_EQ(result.dim, 16u);
  EXPECT_LT(result.coverage, 1.0);  // one corpus word has no vector
  for (const char* name : {"topics/0.json", "topics/0.txt", "topics/1.json", "topics/0.proximity.json",
                           "models/0.json", "report.json", "results.csv", "manifest.json", "vocab.tsv",
                           "weights.tsv", "rerank_weights.tsv"}) {
    EXPECT_TRUE(fs::exists(c.output_dir / name)) << name;
  }
  const auto topics = et::load_topics(c.output_dir / "topics/1.json");
  EXPECT_EQ(topics.provenance.seed, 1u);
  EXPECT_EQ(topics.topics.size(), 4u);
  // k-means may settle with a very small cluster; none exceeds J words.
  for (const auto& t : topics.topics) {
    EXPECT_GE(t.words.size(), 1u);
    EXPECT_LE(t.words.size(), 5u);
  }
  const auto manifest = nlohmann::json::parse(et::testing::read_text(c.output_dir / "manifest.json"));
  EXPECT_EQ(manifest["train_docs"], 144);
  EXPECT_EQ(manifest["test_docs"], 96);
}

// The bundled toy themes are separable, so frequency reranking should
// recover coherent topics.
TEST(Run, RerankedToyTopicsAreCoherent) {
  et::testing::TempDir dir;
  auto c = toy_config(dir / "out");
  c.weighting = et::WeightScheme::kTf;
  c.reranking = et::RerankScheme::kTf;
  EXPECT_GT(et::run(c).report.mean, 0.0);
}

TEST(Run, TwoClustersAndWholeDocumentWindows) {
  et::testing::TempDir dir;
  auto c = toy_config(dir / "out");
  c.k = 2;
  c.npmi_window = 0;
  c.algorithm = et::ClusterKind::kGmm;
  c.pca_dim = 4;
  const auto result = et::run(c);
  EXPECT_EQ(result.topic_sets.front().topics.size(), 2u);
  EXPECT_EQ(result.dim, 4u);
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  et::testing::TempDir dir;
  for (auto kind : {et::ClusterKind::kKMeans, et::ClusterKind::kGmm}) {
    auto a = toy_config(dir / "a");
    a.algorithm = kind;
    a.reranking = et::RerankScheme::kTfIdf;
    auto b = a;
    b.output_dir = dir / "b";
    et::run(a);
    et::run(b);
    EXPECT_EQ(snapshot(a.output_dir), snapshot(b.output_dir)) << et::to_string(kind);
    fs::remove_all(a.output_dir);
    fs::remove_all(b.output_dir);
  }
}

TEST(Run, MoreClustersThanWordsFails) {
  et::testing::TempDir dir;
  auto c = toy_config(dir / "out");
  c.k = 500;
  EXPECT_EQ(code_of([&] { et::run(c); }), et::ErrorCode::kInvalidArgument);
}

TEST(Sweep, CachedAndFreshCellsAgree) {
  et::testing::TempDir dir;
  auto base = toy_config(dir / "cached");
  base.seeds = {0};
  const std::vector<std::string> values{"tf", "tf_idf", "none"};
  et::PipelineCache cache;
  et::sweep(base, et::SweepAxis::kWeightSchemes, values, cache);
  EXPECT_GT(cache.hits(), 0u);

  auto fresh_base = base;
  fresh_base.output_dir = dir / "fresh";
  std::string csv = et::sweep_csv_header() + "\n";
  for (const auto& v : values) {
    et::PipelineCache fresh;
    const auto cells = et::sweep(fresh_base, et::SweepAxis::kWeightSchemes, {v}, fresh);
    csv += et::sweep_csv_row(fresh_base, et::SweepAxis::kWeightSchemes, cells.front()) + "\n";
  }
  EXPECT_EQ(et::testing::read_text(base.output_dir / "sweep.csv"), csv);
  EXPECT_TRUE(fs::exists(base.output_dir / "weight_schemes-tf_idf" / "report.json"));
}

TEST(Sweep, FailingCellIsRecordedAndTheRestRun) {
  et::testing::TempDir dir;
  auto base = toy_config(dir / "out");
  base.seeds = {0};
  et::PipelineCache cache;
  const auto cells = et::sweep(base, et::SweepAxis::kAlgorithms, {"km", "lda", "kd"}, cache);
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_TRUE(cells[0].report.has_value());
  EXPECT_FALSE(cells[1].report.has_value());
  EXPECT_EQ(cells[1].error.rfind("InvalidArgument", 0), 0u) << cells[1].error;
  EXPECT_TRUE(cells[2].report.has_value());
  const std::string csv = et::testing::read_text(base.output_dir / "sweep.csv");
  EXPECT_NE(csv.find("algorithms,lda,"), std::string::npos);

  const auto pca = et::sweep(base, et::SweepAxis::kPcaDims, {"4", "64"}, cache);
  EXPECT_TRUE(pca[0].report.has_value());
  EXPECT_EQ(pca[1].error.rfind("InvalidArgument", 0), 0u) << pca[1].error;
}

TEST(Sweep, AxisNames) {
  for (auto a : {et::SweepAxis::kPcaDims, et::SweepAxis::kAlgorithms, et::SweepAxis::kWeightSchemes,
                 et::SweepAxis::kRerankSchemes}) {
    EXPECT_EQ(et::parse_sweep_axis(et::to_string(a)), a);
  }
  EXPECT_EQ(code_of([] { et::parse_sweep_axis("colours"); }), et::ErrorCode::kInvalidArgument);
}
