#include <gtest/gtest.h>

#include <map>
#include <set>

#include "hits/error.hpp"
#include "hits/ngram.hpp"
#include "hits/synthetic.hpp"
#include "test_support.hpp"

namespace hits {
namespace {

using testing::doc;

// Four documents, two authors, both classes among the pairs.
struct Fixture {
  Corpus corpus;
  std::vector<VerificationPair> pairs;
};

Fixture fixture(const std::vector<std::string>& texts) {
  std::vector<Document> d;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    d.push_back(doc("d" + std::to_string(i), i % 2 ? "y" : "x", i < texts.size() / 2 ? "A" : "B", texts[i]));
  }
  Fixture f{Corpus(std::move(d)), {}};
  std::size_t id = 0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    for (std::size_t j = i + 1; j < texts.size(); ++j) {
      f.pairs.push_back({"p" + std::to_string(id++), "d" + std::to_string(i), "d" + std::to_string(j), i % 2 == j % 2});
    }
  }
  return f;
}

TEST(Extract, CharactersAreCodePoints) {
  EXPECT_EQ(extract_ngrams("Abc\xc3\xa9", 2, NGramUnit::kCharacter, true),
            (std::vector<std::string>{"ab", "bc", "c\xc3\xa9"}));
  EXPECT_EQ(extract_ngrams("ab", 3, NGramUnit::kCharacter, true).size(), 0u);
  EXPECT_EQ(extract_ngrams("The cat, the DOG", 2, NGramUnit::kWord, true),
            (std::vector<std::string>{"the cat", "cat the", "the dog"}));
  EXPECT_THROW(extract_ngrams("x", 0, NGramUnit::kCharacter, true), ConfigError);
}

TEST(CharNGram, RepeatedCharacter) {
  const auto f = fixture({"aaaa", "aaaaaa", "aaa", "aaaaa"});
  NGramConfig cfg;
  cfg.n = 2;
  const auto m = char_ngram_train(f.pairs, f.corpus, cfg);
  EXPECT_EQ(m.vocabulary(), std::vector<std::string>{"aa"});
  EXPECT_DOUBLE_EQ(m.raw_score("aaaa", "aaaaaaaa").value, 1.0);
}

TEST(CharNGram, DisjointCharactersScoreZero) {
  const auto f = fixture({"abab abab", "cdcd cdcd", "abba", "dcdc"});
  NGramConfig cfg;
  cfg.n = 2;
  const auto m = char_ngram_train(f.pairs, f.corpus, cfg);
  EXPECT_EQ(m.raw_score("ababab", "cdcdcd").value, 0.0);
  EXPECT_FALSE(m.raw_score("ababab", "cdcdcd").degenerate);
  const auto z = m.raw_score("ababab", "zzzz");
  EXPECT_EQ(z.value, 0.0);
  EXPECT_TRUE(z.degenerate);
  EXPECT_DOUBLE_EQ(m.raw_score("abab", "ABAB").value, 1.0);
}

TEST(CharNGram, VocabularyMatchesFrequencyCount) {
  Rng rng(6);
  std::vector<std::string> texts;
  for (int i = 0; i < 8; ++i) {
    std::string t;
    for (int k = 0; k < 60; ++k) t += static_cast<char>("abcdeXY "[rng.below(8)]);
    texts.push_back(t);
  }
  const auto f = fixture(texts);
  NGramConfig cfg;
  cfg.n = 3;
  cfg.vocab_size = 25;
  const auto m = char_ngram_train(f.pairs, f.corpus, cfg);

  std::map<std::string, int> count;
  for (const auto& t : texts) {
    std::string lower = t;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (std::size_t i = 0; i + 3 <= lower.size(); ++i) ++count[lower.substr(i, 3)];
  }
  std::vector<std::pair<int, std::string>> ranked;
  for (const auto& [g, c] : count) ranked.push_back({-c, g});
  std::sort(ranked.begin(), ranked.end());
  ASSERT_EQ(m.vocabulary().size(), 25u);
  for (std::size_t i = 0; i < 25; ++i) {
    EXPECT_EQ(m.vocabulary()[i], ranked[i].second);
    EXPECT_EQ(m.frequencies()[i], -ranked[i].first);
  }
}

TEST(CharNGram, RawScoreMatchesIndependentCosine) {
  Rng rng(10);
  std::vector<std::string> texts;
  for (int i = 0; i < 10; ++i) {
    std::string t;
    for (int k = 0; k < 80; ++k) t += static_cast<char>("abcdefg "[rng.below(8)]);
    texts.push_back(t);
  }
  const auto f = fixture(texts);
  NGramConfig cfg;
  cfg.n = 2;
  cfg.vocab_size = 30;
  const auto m = char_ngram_train(f.pairs, f.corpus, cfg);
  const std::set<std::string> vocab(m.vocabulary().begin(), m.vocabulary().end());
  auto counts = [&](const std::string& t) {
    std::map<std::string, double> c;
    for (std::size_t i = 0; i + 2 <= t.size(); ++i) {
      if (vocab.count(t.substr(i, 2))) c[t.substr(i, 2)] += 1;
    }
    return c;
  };
  for (const auto& p : f.pairs) {
    const auto a = counts(f.corpus.document(p.doc_a).text);
    const auto b = counts(f.corpus.document(p.doc_b).text);
    double ab = 0, aa = 0, bb = 0;
    for (const auto& [g, x] : a) {
      aa += x * x;
      if (b.count(g)) ab += x * b.at(g);
    }
    for (const auto& [g, y] : b) bb += y * y;
    EXPECT_NEAR(raw_score(m, p, f.corpus).value, ab / std::sqrt(aa * bb), 1e-12);
  }
}

TEST(CharNGram, ScoresAreCalibratedProbabilities) {
  const auto c = synth_style_corpus(1, {.clusters = 3, .authors_per_cluster = 4, .docs_per_author_topic = 2});
  SampleResult s;
  s.selected_topics = c.topic_ids();
  SplitConfig sc;
  sc.fold_count = 3;
  const auto split = build_splits(c, s, sc).front();
  const auto m = char_ngram_train(split.train_pairs, c);
  EXPECT_LE(m.calibration().p1, m.calibration().p2);
  for (const auto& p : split.test_pairs) {
    const double v = m.score(c.document(p.doc_a).text, c.document(p.doc_b).text);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  const auto back = NGramModel::from_json(m.to_json());
  EXPECT_EQ(back.vocabulary(), m.vocabulary());
  EXPECT_EQ(back.calibration(), m.calibration());
  EXPECT_EQ(back.range(), m.range());
}

TEST(HoldOut, WholeAuthorsAndBothClasses) {
  const auto c = synth_style_corpus(2, {.clusters = 3, .authors_per_cluster = 5, .docs_per_author_topic = 2});
  const auto ids = c.topic_ids();
  const auto pairs = generate_pairs(c, {ids.begin(), ids.end()}, 3, SplitConfig{});
  const auto part = hold_out_by_author(pairs, c, 0.1, 0);
  EXPECT_EQ(part.fit.size() + part.validation.size(), pairs.size());
  bool pos = false, neg = false;
  for (const auto& p : part.validation) (p.label ? pos : neg) = true;
  EXPECT_TRUE(pos && neg);
}

}  // namespace
}  // namespace hits
