#include <gtest/gtest.h>

#include "hits/error.hpp"
#include "hits/synthetic.hpp"
#include "hits/verifier.hpp"

namespace hits {
namespace {

TEST(VerifierKind, Names) {
  for (auto k : kAllVerifiers) EXPECT_EQ(parse_verifier_kind(to_string(k)), k);
  EXPECT_THROW(parse_verifier_kind("bert"), ConfigError);
}

TEST(Verifier, EveryKindTrainsPredictsAndRoundTrips) {
  const auto c = synth_style_corpus(5, {.clusters = 3, .authors_per_cluster = 4, .docs_per_author_topic = 2});
  SampleResult s;
  s.selected_topics = c.topic_ids();
  SplitConfig sc;
  sc.fold_count = 3;
  const auto split = build_splits(c, s, sc).at(1);
  for (auto kind : kAllVerifiers) {
    const auto v = train_verifier(kind, split.train_pairs, c, VerifierConfig{});
    EXPECT_EQ(v->kind(), kind);
    const auto preds = predict(*v, split.test_pairs, c);
    ASSERT_EQ(preds.size(), split.test_pairs.size());
    const auto back = verifier_from_json(io::Json::parse(verifier_to_json(*v).dump()));
    const auto again = predict(*back, split.test_pairs, c);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      EXPECT_EQ(preds.entries()[i].pair_id, split.test_pairs[i].pair_id);
      EXPECT_EQ(again.entries()[i].score, preds.entries()[i].score);
    }
  }
}

TEST(Verifier, RejectsForeignDocuments) {
  EXPECT_THROW(verifier_from_json(io::Json{{"format", "x"}, {"version", 1}}), DataError);
  EXPECT_THROW(verifier_from_json(io::Json{{"format", "hits-model"}, {"version", 1}, {"kind", "nope"}, {"model", {}}}),
               DataError);
}

TEST(PredictionsTsv, RoundTripsExactly) {
  const PredictionSet p({{"a", 0.1 + 0.2, true}, {"b", 0.5, false}, {"c", 1.0, true}, {"d", 1e-17, false}});
  const auto text = predictions_to_tsv(p);
  EXPECT_EQ(text.substr(0, 20), "#hits-predictions v1");
  const auto back = predictions_from_tsv(text, "t");
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(back.entries()[i].pair_id, p.entries()[i].pair_id);
    EXPECT_EQ(back.entries()[i].score, p.entries()[i].score);
    EXPECT_EQ(back.entries()[i].label, p.entries()[i].label);
  }
  EXPECT_EQ(predictions_to_tsv(back), text);
}

TEST(PredictionsTsv, MalformedRowsNamed) {
  const std::string head = "#hits-predictions v1\npair_id\tscore\tlabel\n";
  try {
    predictions_from_tsv(head + "a\t0.3\t1\nb\tzero\t0\n", "f.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(predictions_from_tsv(head + "a\t0.3\t2\n", "f"), ParseError);
  EXPECT_THROW(predictions_from_tsv("pair_id\tscore\tlabel\n", "f"), ParseError);
}

}  // namespace
}  // namespace hits
