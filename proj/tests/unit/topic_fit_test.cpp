#include <gtest/gtest.h>

#include "hits/synthetic.hpp"
#include "hits/topic_fit.hpp"
#include "test_support.hpp"

namespace hits {
namespace {

using testing::doc;

TEST(Mask, TableExample) {
  const Stoplist stop = {"the", "and", "are", "in"};
  EXPECT_EQ(topicfit_mask("The dogs and cats are running in the garden", stop),
            "*** dogs *** cats *** running ** *** garden");
}

TEST(Mask, EmptyStoplistIsIdentity) {
  EXPECT_EQ(topicfit_mask("Anything, at all!", {}), "Anything, at all!");
}

TEST(Mask, OnlyStopwordsKeepLengths) {
  const Stoplist stop = {"a", "bb", "caf\xc3\xa9"};
  EXPECT_EQ(topicfit_mask("A bb, Caf\xc3\xa9.", stop), "* **, ****.");
}

TEST(Mask, Idempotent) {
  const auto c = synth_style_corpus(4, {.clusters = 2, .authors_per_cluster = 3, .docs_per_author_topic = 1});
  std::vector<std::string_view> texts;
  for (const auto& d : c.documents()) texts.push_back(d.text);
  const auto stop = build_stoplist(texts, 50);
  for (const auto& d : c.documents()) {
    const auto once = topicfit_mask(d.text, stop);
    EXPECT_EQ(topicfit_mask(once, stop), once);
    EXPECT_EQ(once.size(), d.text.size());
  }
}

TEST(Stoplist, TopKByFrequencyThenWord) {
  const std::vector<std::string_view> texts = {"b a c a", "B c d", "e"};
  EXPECT_EQ(build_stoplist(texts, 2), (Stoplist{"a", "b"}));
  EXPECT_EQ(build_stoplist(texts, 3), (Stoplist{"a", "b", "c"}));
  EXPECT_EQ(build_stoplist(texts, 100).size(), 5u);
}

Corpus masked_fixture() {
  return Corpus({doc("d0", "x", "A", "the of apple pear the of"), doc("d1", "x", "B", "of the apple pear of the"),
                 doc("d2", "y", "A", "the of kiwi fig of the"), doc("d3", "y", "B", "the kiwi of fig the of")});
}

TEST(TopicFit, ContentWordOverlapDrivesScore) {
  const auto c = masked_fixture();
  const std::vector<VerificationPair> pairs = {{"p0", "d0", "d1", true},
                                               {"p1", "d2", "d3", true},
                                               {"p2", "d0", "d2", false},
                                               {"p3", "d1", "d3", false}};
  TopicFitConfig cfg;
  cfg.stoplist_size = 2;
  const auto m = topicfit_train(pairs, c, cfg);
  EXPECT_EQ(m.stoplist(), (Stoplist{"of", "the"}));
  EXPECT_DOUBLE_EQ(m.raw_score(c.document("d0").text, c.document("d1").text).value, 1.0);
  EXPECT_EQ(m.raw_score(c.document("d0").text, c.document("d2").text).value, 0.0);
  // The masked stopwords never enter the vocabulary.
  for (const auto& w : m.inner().vocabulary()) EXPECT_EQ(w.find('*'), std::string::npos);

  const auto back = TopicFitModel::from_json(m.to_json());
  EXPECT_EQ(back.stoplist(), m.stoplist());
  for (const auto& p : pairs) EXPECT_EQ(topicfit_score(back, p, c), topicfit_score(m, p, c));
}

}  // namespace
}  // namespace hits
