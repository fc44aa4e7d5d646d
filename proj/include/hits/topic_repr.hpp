#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hits/corpus.hpp"

namespace hits {

using Vector = std::vector<double>;

struct DocumentEmbedding {
  std::string doc_id;
  Vector vector;
};

struct TopicRepresentation {
  std::string topic_id;
  Vector vector;
  std::size_t doc_count = 0;
};

struct EncoderConfig {
  // 1 + ln(tf) instead of raw counts.
  bool sublinear_tf = false;
  // Random +/-1 sign per hashed token, which makes bucket collisions cancel
  // in expectation instead of always adding.
  bool signed_hash = false;
  std::uint64_t hash_seed = 0;
};

inline constexpr std::string_view kEmbeddingFormat = "hits-embeddings";
inline constexpr int kEmbeddingVersion = 1;

// Line 1: {"format":"hits-embeddings","version":1,"dim":D}. Each following
// line: doc_id, then D numbers, tab separated. Returns one embedding per
// corpus document, in corpus order.
std::vector<DocumentEmbedding> ingest_embeddings(const std::filesystem::path& path, const Corpus& corpus);
std::vector<DocumentEmbedding> parse_embeddings(std::string_view content, const Corpus& corpus,
                                                const std::string& source_name = "<embeddings>");
std::string serialize_embeddings(std::span<const DocumentEmbedding> embeddings);

// Hashed bag-of-words with smoothed idf, L2-normalized. Tokens are lowercase
// runs of alphanumerics.
std::vector<DocumentEmbedding> encode_tfidf_hashed(const Corpus& corpus, std::size_t dim,
                                                   const EncoderConfig& config = {});

// Topic vector = arithmetic mean of the topic's document vectors, as
// ingested. Result is ordered by topic_id.
std::vector<TopicRepresentation> build_topic_vectors(std::span<const DocumentEmbedding> embeddings,
                                                     const Corpus& corpus);

double cosine(std::span<const double> a, std::span<const double> b);

class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::vector<std::string> ids, std::vector<double> values);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }
  // Throws LookupError for unknown ids.
  std::size_t index_of(std::string_view id) const;
  double at(std::string_view a, std::string_view b) const { return (*this)(index_of(a), index_of(b)); }

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
};

// Pairwise cosine over topics, in the order given. Unit diagonal, exactly
// symmetric.
SimilarityMatrix topic_similarity_matrix(std::span<const TopicRepresentation> topics);

const TopicRepresentation& find_topic(std::span<const TopicRepresentation> topics, std::string_view topic_id);

}  // namespace hits
