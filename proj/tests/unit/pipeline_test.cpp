#include <gtest/gtest.h>

#include <atomic>

#include "hits/error.hpp"
#include "hits/pipeline.hpp"
#include "hits/synthetic.hpp"
#include "test_support.hpp"

namespace hits {
namespace {

const StyleCorpusConfig kSmall{.clusters = 4, .authors_per_cluster = 4, .docs_per_author_topic = 2};

RunConfig small_run(const std::filesystem::path& dir) {
  save_corpus(synth_style_corpus(6, kSmall), dir / "corpus.jsonl");
  RunConfig c;
  c.corpus_path = dir / "corpus.jsonl";
  c.encoder_dim = 256;
  c.topic_count = 6;
  c.random_seeds = {0, 1};
  c.split.fold_count = 3;
  c.output_dir = dir / "out";
  return c;
}

TEST(ParallelFor, VisitsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hit(50);
  parallel_for(50, 4, [&](std::size_t i) { ++hit[i]; });
  for (const auto& h : hit) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw TrainingError("boom");
                            }),
               TrainingError);
}

TEST(EvaluateSplits, IndependentOfWorkerCount) {
  const auto corpus = synth_style_corpus(7, kSmall);
  SampleResult s;
  s.selected_topics = corpus.topic_ids();
  SplitConfig sc;
  sc.fold_count = 3;
  const auto splits = build_splits(corpus, s, sc);
  const std::vector<VerifierKind> models(std::begin(kAllVerifiers), std::end(kAllVerifiers));
  const auto one = evaluate_splits(corpus, splits, models, {}, 5, 1);
  const auto many = evaluate_splits(corpus, splits, models, {}, 5, 4);
  ASSERT_EQ(one.size(), 9u);
  ASSERT_EQ(many.size(), 9u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].fold_id, i / 3);
    EXPECT_EQ(one[i].model, many[i].model);
    EXPECT_EQ(predictions_to_tsv(one[i].predictions), predictions_to_tsv(many[i].predictions));
  }
  const auto folds = fold_reports(one);
  ASSERT_EQ(folds.size(), 3u);
  EXPECT_EQ(folds[0].size(), 3u);
}

TEST(RunConfig, Validation) {
  testing::TempDir dir("cfg");
  RunConfig c = small_run(dir.path());
  EXPECT_NO_THROW(validate_run_config(c));
  auto bad = c;
  bad.corpus_path = dir.path() / "missing";
  EXPECT_THROW(validate_run_config(bad), ConfigError);
  bad = c;
  bad.random_seeds = {1, 1};
  EXPECT_THROW(validate_run_config(bad), ConfigError);
  bad = c;
  bad.topic_count = 40;
  EXPECT_THROW(stage_sample(bad), ConfigError);
  EXPECT_FALSE(std::filesystem::exists(c.output_dir / "samples"));
  bad = c;
  bad.split.fold_count = 7;
  EXPECT_THROW(run_all(bad), ConfigError);

  const auto setups = planned_setups(c);
  ASSERT_EQ(setups.size(), 3u);
  EXPECT_EQ(setups[0].name, "hits");
  EXPECT_EQ(setups[2].name, "random-s1");
  c.hits_grouping = true;
  EXPECT_EQ(planned_setups(c)[0].display, "HITS-G");
}

TEST(RunAll, WritesTheDocumentedTree) {
  testing::TempDir dir("tree");
  RunConfig c = small_run(dir.path());
  run_all(c);
  const auto out = c.output_dir;
  for (const char* p : {"embeddings.tsv", "samples/hits.json", "samples/random-s0.json", "splits/hits/fold-00.json",
                        "splits/random-s1/fold-02.json", "models/hits/ppm/fold-01.json",
                        "predictions/random-s0/topic-fit/fold-00.tsv", "metrics/hits/char-ngram/fold-02.json",
                        "metrics/hits/summary.txt", "reports/mainresults.txt", "reports/uncover.json",
                        "reports/rankingstabmain.txt", "reports/numtopicsim.txt", "reports/topicexamples.txt",
                        "reports/rankinganal.txt", "reports/stability-hits.json", "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(out / p)) << p;
  }
  const auto manifest = io::read_json(out / "manifest.json");
  EXPECT_EQ(manifest["format"], "hits-manifest");
  EXPECT_EQ(manifest["inputs"]["corpus"]["sha256"], io::sha256_file(c.corpus_path));
}

TEST(RunAll, ByteIdenticalReruns) {
  testing::TempDir dir("det");
  RunConfig a = small_run(dir.path());
  a.random_seeds = {3};
  RunConfig b = a;
  b.output_dir = dir.path() / "out2";
  b.workers = 3;
  run_all(a);
  run_all(b);
  EXPECT_EQ(testing::snapshot(a.output_dir), testing::snapshot(b.output_dir));
}

TEST(Report, ShortcutNeedsBothSetups) {
  testing::TempDir dir("short");
  RunConfig c = small_run(dir.path());
  c.random_seeds.clear();
  EXPECT_THROW(run_all(c), ConfigError);
  EXPECT_FALSE(std::filesystem::exists(c.output_dir));
  c.shortcut_test = false;
  EXPECT_NO_THROW(run_all(c));
  c.shortcut_test = true;
  EXPECT_THROW(stage_report(c), ConfigError);
}

}  // namespace
}  // namespace hits
