#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "hits/io.hpp"
#include "hits/synthetic.hpp"
#include "test_support.hpp"

namespace hits {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    save_corpus(synth_style_corpus(8, {.clusters = 3, .authors_per_cluster = 4, .docs_per_author_topic = 2}),
                dir_.path() / "corpus.jsonl");
  }

  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + HITS_CLI_PATH + " " + args + " >" + (dir_.path() / "stdout").string() +
                            " 2>" + (dir_.path() / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stderr_text() { return io::read_file(dir_.path() / "stderr"); }
  std::string corpus() { return "--corpus " + (dir_.path() / "corpus.jsonl").string(); }
  fs::path out() { return dir_.path() / "out"; }
  std::string out_flag() { return "--out-dir " + out().string(); }

  testing::TempDir dir_{"cli"};
};

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("sample --no-such-flag"), 1);
  EXPECT_EQ(run("encode --out x.tsv"), 1);
  EXPECT_NE(stderr_text().find("corpus"), std::string::npos);
  EXPECT_EQ(run("sample " + corpus() + " --m 4 --models bert " + out_flag()), 1);
}

TEST_F(Cli, DataErrorsExitTwo) {
  io::write_file(dir_.path() / "bad.jsonl", "not a header\n");
  EXPECT_EQ(run("sample --corpus " + (dir_.path() / "bad.jsonl").string() + " --m 2 " + out_flag()), 2);
  EXPECT_NE(stderr_text().find(":1:"), std::string::npos);
}

TEST_F(Cli, EncodeIsDeterministic) {
  const auto a = dir_.path() / "a.tsv";
  const auto b = dir_.path() / "b.tsv";
  ASSERT_EQ(run("encode " + corpus() + " --dim 64 --out " + a.string()), 0);
  ASSERT_EQ(run("encode " + corpus() + " --dim 64 --out " + b.string()), 0);
  EXPECT_EQ(io::read_file(a), io::read_file(b));
  EXPECT_EQ(io::split_lines(io::read_file(a)).size(), 1u + 48u);
}

TEST_F(Cli, SampleCounts) {
  ASSERT_EQ(run("sample " + corpus() + " --m 4 --method random --seeds 0,1,2,3,4 " + out_flag()), 0);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(out() / "samples")) ++files;
  EXPECT_EQ(files, 5u);
  fs::remove_all(out());
  ASSERT_EQ(run("sample " + corpus() + " --m 4 --method hits " + out_flag()), 0);
  EXPECT_TRUE(fs::exists(out() / "samples" / "hits.json"));
  EXPECT_TRUE(fs::exists(out() / "manifest.json"));
  fs::remove_all(out());
  EXPECT_EQ(run("sample " + corpus() + " --m 7 " + out_flag()), 1);
  EXPECT_FALSE(fs::exists(out() / "samples"));
}

TEST_F(Cli, StagesInOrder) {
  const std::string common = corpus() + " --m 4 --k 2 --method hits --models char-ngram --no-shortcut " + out_flag();
  ASSERT_EQ(run("sample " + common), 0);
  ASSERT_EQ(run("split " + common), 0);
  EXPECT_TRUE(fs::exists(out() / "splits" / "hits" / "fold-01.json"));
  EXPECT_FALSE(fs::exists(out() / "splits" / "hits" / "fold-02.json"));
  ASSERT_EQ(run("evaluate " + common), 0) << stderr_text();
  EXPECT_TRUE(fs::exists(out() / "predictions" / "hits" / "char-ngram" / "fold-00.tsv"));
  EXPECT_TRUE(fs::exists(out() / "metrics" / "hits" / "char-ngram" / "fold-01.json"));
  ASSERT_EQ(run("report " + common), 0) << stderr_text();
  EXPECT_TRUE(fs::exists(out() / "reports" / "mainresults.txt"));
  EXPECT_EQ(run("split " + corpus() + " --m 4 --k 5 --method hits " + out_flag()), 1);
  EXPECT_EQ(run("report " + corpus() + " --m 4 --k 2 --method hits --models char-ngram " + out_flag()), 1);
  EXPECT_NE(stderr_text().find("random"), std::string::npos);
}

TEST_F(Cli, EnvironmentFallbacks) {
  const std::string args = "sample " + corpus() + " --m 4 --method hits";
  ASSERT_EQ(run(args, "HITS_OUTPUT_DIR=" + out().string()), 0);
  EXPECT_TRUE(fs::exists(out() / "samples" / "hits.json"));
  const auto flag_dir = dir_.path() / "flag";
  ASSERT_EQ(run(args + " --out-dir " + flag_dir.string(), "HITS_OUTPUT_DIR=" + out().string()), 0);
  EXPECT_TRUE(fs::exists(flag_dir / "samples" / "hits.json"));
  EXPECT_EQ(run(args + " --out-dir " + flag_dir.string(), "HITS_WORKERS=abc"), 1);
}

TEST_F(Cli, SynthWritesCorpora) {
  const auto g = dir_.path() / "g.jsonl";
  const auto e = dir_.path() / "g.tsv";
  ASSERT_EQ(run("synth --kind geometry --seed 3 --out " + g.string() + " --embeddings-out " + e.string()), 0);
  EXPECT_EQ(load_corpus(g).topic_count(), 20u);
  EXPECT_TRUE(fs::exists(e));
  EXPECT_EQ(run("synth --kind poem --out " + g.string()), 1);
}

}  // namespace
}  // namespace hits
