#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hits/corpus.hpp"
#include "hits/io.hpp"
#include "hits/sampler.hpp"
#include "hits/topic_repr.hpp"

namespace hits {

struct SplitConfig {
  std::size_t fold_count = 10;
  std::uint64_t pair_seed = 0;
  double positive_fraction = 0.5;
  // nullopt means unlimited.
  std::optional<std::size_t> max_pairs_per_author = 10;
  // Same-author pairs spanning two topics are taken before same-topic ones.
  bool prefer_cross_topic_positives = true;
};

struct VerificationPair {
  std::string pair_id;
  std::string doc_a;
  std::string doc_b;
  bool label = false;  // true = same author

  friend bool operator==(const VerificationPair&, const VerificationPair&) = default;
};

struct EvaluationSplit {
  std::size_t fold_id = 0;
  std::vector<std::string> train_topics;  // sorted
  std::vector<std::string> test_topics;   // sorted
  std::vector<VerificationPair> train_pairs;
  std::vector<VerificationPair> test_pairs;

  friend bool operator==(const EvaluationSplit&, const EvaluationSplit&) = default;
};

// Balanced partition of the topics into k folds (sizes differ by at most
// one). The topic list is sorted before the seeded shuffle, so the folds
// depend only on the topic set and the seed. Each fold is sorted.
std::vector<std::vector<std::string>> partition_topics(std::vector<std::string> selected, std::size_t k,
                                                       std::uint64_t seed);

// Labeled pairs over the documents whose topic is in `topics`. Positives
// come from authors with at least two documents in scope, negatives from
// documents by different authors; the class ratio follows
// config.positive_fraction to within one pair.
std::vector<VerificationPair> generate_pairs(const Corpus& corpus, const std::set<std::string>& topics,
                                             std::uint64_t seed, const SplitConfig& config,
                                             std::string_view id_prefix = "p");

// Cross-topic folds over the sampled topics. When the sample carries a
// grouping map the corpus is relabeled first.
std::vector<EvaluationSplit> build_splits(const Corpus& corpus, const SampleResult& sample,
                                          const SplitConfig& config);

// Corpus as seen by the splits of `sample`: relabeled when grouped, then
// restricted to the selected topics.
Corpus sampled_corpus(const Corpus& corpus, const SampleResult& sample);

struct SplitSimilarity {
  double mean = 0.0;
  double max = 0.0;
};

// Mean and max cosine similarity over all (train topic, test topic) pairs.
SplitSimilarity split_topic_similarity(const EvaluationSplit& split, std::span<const TopicRepresentation> topics);

inline constexpr std::string_view kSplitFormat = "hits-split";
inline constexpr int kSplitVersion = 1;

io::Json split_to_json(const EvaluationSplit& split);
EvaluationSplit split_from_json(const io::Json& doc);

}  // namespace hits
