#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hits/corpus.hpp"
#include "hits/topic_repr.hpp"

namespace hits {

// Topic geometry with planted near-duplicate topic pairs. Every topic center
// is a random unit direction plus a shared base direction and a "hub"
// direction; twins get a strong hub weight, singletons a weak one, so twins
// sit in the dense part of the space. Documents scatter around their topic
// center.
struct GeometryConfig {
  std::size_t singleton_count = 10;
  std::size_t pair_count = 5;
  std::size_t dim = 48;
  std::size_t docs_per_topic = 3;
  std::size_t author_count = 12;
  double topic_noise = 0.15;
  double doc_noise = 0.05;
  double hub_low = 0.6;
  double hub_high = 1.5;
  double hub_jitter = 0.2;
  double base_weight = 0.6;
};

struct GeometryCorpus {
  Corpus corpus;
  std::vector<DocumentEmbedding> embeddings;
  std::vector<std::pair<std::string, std::string>> planted_pairs;
};

GeometryCorpus synth_geometry_corpus(std::uint64_t seed, const GeometryConfig& config = {});

// Text corpus where topics come in clusters of near-duplicate topics that
// share a keyword pool, and every author of a cluster writes in each of its
// topics. Authors have personal favorites within the pool (topical signal)
// and a personal style: function-word preferences, punctuation habits and
// sentence length (topic-independent signal).
struct StyleCorpusConfig {
  std::size_t clusters = 10;
  std::size_t topics_per_cluster = 2;
  std::size_t authors_per_cluster = 8;
  std::size_t docs_per_author_topic = 4;
  std::size_t words_per_doc = 120;
  // Document length is drawn uniformly from words_per_doc * [1 - j, 1 + j].
  double length_jitter = 0.0;
  std::size_t pool_size = 40;
  std::size_t topic_specific = 10;
  std::size_t favorites = 8;
  std::size_t generic_size = 400;
  double function_rate = 0.5;
  double keyword_rate = 0.15;
  double favorite_share = 0.9;
  // Multiplier on an author's preferred function words.
  double style_boost = 6.0;
};

Corpus synth_style_corpus(std::uint64_t seed, const StyleCorpusConfig& config = {});

}  // namespace hits
