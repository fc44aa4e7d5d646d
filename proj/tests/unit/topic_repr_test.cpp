#include <gtest/gtest.h>

#include <cmath>

#include "hits/error.hpp"
#include "hits/topic_repr.hpp"
#include "test_support.hpp"

namespace hits {
namespace {

using testing::doc;

Corpus three_docs() {
  return Corpus({doc("a1", "x", "A", "alpha beta"), doc("a2", "y", "A", "gamma"), doc("b2", "x", "B", "delta")});
}

constexpr const char* kHeader4 = R"({"format":"hits-embeddings","version":1,"dim":4})";

TEST(Embeddings, IngestsFullCoverage) {
  const std::string file = std::string(kHeader4) +
                           "\na1\t1\t0\t0\t0\na2\t0\t1\t0\t0\nb2\t0\t0\t1\t0.5\n";
  const auto e = parse_embeddings(file, three_docs());
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[2].doc_id, "b2");
  EXPECT_EQ(e[2].vector, (Vector{0, 0, 1, 0.5}));
}

TEST(Embeddings, MissingDocumentNamed) {
  const std::string file = std::string(kHeader4) + "\na1\t1\t0\t0\t0\na2\t0\t1\t0\t0\n";
  try {
    parse_embeddings(file, three_docs());
    FAIL() << "expected IntegrityError";
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("b2"), std::string::npos);
  }
}

TEST(Embeddings, DimensionMismatchAtFirstOffendingRow) {
  const std::string file =
      std::string(kHeader4) + "\na1\t1\t0\t0\t0\na2\t0\t1\t0\t0\t0\t0\t0\t0\nb2\t0\t0\t1\t0\t1\t1\t1\t1\n";
  try {
    parse_embeddings(file, three_docs());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Embeddings, SerializeRoundTrip) {
  const auto c = three_docs();
  const auto e = encode_tfidf_hashed(c, 64);
  const auto back = parse_embeddings(serialize_embeddings(e), c);
  ASSERT_EQ(back.size(), e.size());
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(back[i].vector, e[i].vector);
}

TEST(Encoder, IdenticalTextsIdenticalVectors) {
  const Corpus c({doc("a", "x", "A", "The same words here"), doc("b", "y", "B", "the same WORDS here")});
  const auto e = encode_tfidf_hashed(c, 256);
  EXPECT_EQ(e[0].vector, e[1].vector);
  EXPECT_NEAR(cosine(e[0].vector, e[1].vector), 1.0, 1e-12);
}

TEST(Encoder, DisjointTokensNearlyOrthogonal) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::string a, b;
    for (int i = 0; i < 20; ++i) a += "a" + std::to_string(rng.below(100000)) + " ";
    for (int i = 0; i < 20; ++i) b += "b" + std::to_string(rng.below(100000)) + " ";
    const Corpus c({doc("a", "x", "A", a), doc("b", "y", "B", b)});
    const auto e = encode_tfidf_hashed(c, 1u << 14);
    EXPECT_LE(std::abs(cosine(e[0].vector, e[1].vector)), 0.05);
  }
}

TEST(Encoder, TokenFreeTextRejected) {
  const Corpus c({doc("a", "x", "A", "words"), doc("b", "y", "B", "!!! ...")});
  EXPECT_THROW(encode_tfidf_hashed(c, 64), DegenerateInputError);
  EXPECT_THROW(encode_tfidf_hashed(three_docs(), 1), ConfigError);
}

TEST(Encoder, Deterministic) {
  const auto c = three_docs();
  EncoderConfig cfg;
  cfg.signed_hash = true;
  cfg.sublinear_tf = true;
  EXPECT_EQ(serialize_embeddings(encode_tfidf_hashed(c, 128, cfg)),
            serialize_embeddings(encode_tfidf_hashed(c, 128, cfg)));
}

TEST(TopicVectors, MeanOfDocuments) {
  const auto c = three_docs();
  const std::vector<DocumentEmbedding> e = {{"a1", {1, 0}}, {"a2", {0, 1}}, {"b2", {0.3, 0.4}}};
  const auto t = build_topic_vectors(e, c);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].topic_id, "A");
  EXPECT_EQ(t[0].vector, (Vector{0.5, 0.5}));
  EXPECT_EQ(t[0].doc_count, 2u);
  EXPECT_EQ(t[1].vector, (Vector{0.3, 0.4}));
}

TEST(TopicVectors, MatchIndependentSummation) {
  Rng rng(11);
  std::vector<Document> docs;
  std::vector<DocumentEmbedding> e;
  for (int i = 0; i < 120; ++i) {
    docs.push_back(doc("d" + std::to_string(i), "a", "t" + std::to_string(rng.below(7)), "x"));
    Vector v(16);
    for (auto& x : v) x = rng.normal();
    e.push_back({docs.back().doc_id, v});
  }
  const Corpus c(docs);
  for (const auto& t : build_topic_vectors(e, c)) {
    Vector sum(16, 0.0);
    long double n = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (docs[i].topic_id != t.topic_id) continue;
      for (std::size_t k = 0; k < 16; ++k) sum[k] += e[i].vector[k];
      n += 1;
    }
    for (std::size_t k = 0; k < 16; ++k) {
      const double expect = sum[k] / static_cast<double>(n);
      EXPECT_LE(std::abs(t.vector[k] - expect), 1e-9 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST(Cosine, ClosedForms) {
  EXPECT_DOUBLE_EQ(cosine(Vector{3, 4}, Vector{3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(cosine(Vector{1, 0}, Vector{0, 1}), 0.0);
  EXPECT_NEAR(cosine(Vector{1, 1}, Vector{1, 0}), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(cosine(Vector{0, 0}, Vector{1, 0}), DegenerateInputError);
  EXPECT_THROW(cosine(Vector{1, 0}, Vector{1, 0, 0}), ComputationError);
}

TEST(SimilarityMatrix, KnownCases) {
  std::vector<TopicRepresentation> same = {{"A", {1, 2}, 1}, {"B", {1, 2}, 1}};
  EXPECT_NEAR(topic_similarity_matrix(same)(0, 1), 1.0, 1e-15);
  std::vector<TopicRepresentation> ortho = {{"A", {1, 0, 0}, 1}, {"B", {0, 2, 0}, 1}, {"C", {0, 0, 3}, 1}};
  const auto m = topic_similarity_matrix(ortho);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), i == j ? 1.0 : 0.0);
  }
  EXPECT_EQ(m.at("B", "C"), 0.0);
  EXPECT_THROW(m.index_of("Z"), LookupError);
}

TEST(SimilarityMatrix, MatchesPerEntryCosine) {
  Rng rng(5);
  const auto topics = testing::random_topics(rng, 5, 9, false);
  const auto m = topic_similarity_matrix(topics);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_EQ(m(i, j), m(j, i));
      if (i != j) EXPECT_NEAR(m(i, j), testing::naive_cosine(topics[i].vector, topics[j].vector), 1e-12);
    }
    EXPECT_EQ(m(i, i), 1.0);
  }
}

}  // namespace
}  // namespace hits
