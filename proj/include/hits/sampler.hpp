#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hits/io.hpp"
#include "hits/topic_repr.hpp"

namespace hits {

enum class SampleMethod { kHitsCutting, kHitsGrouping, kRandom };

std::string_view to_string(SampleMethod method);
// Accepts "hits-cutting" (alias "hits"), "hits-grouping", "random".
SampleMethod parse_sample_method(std::string_view name);

struct SamplerConfig {
  SampleMethod method = SampleMethod::kHitsCutting;
  std::size_t target_topic_count = 0;
  // Only consulted by random sampling.
  std::uint64_t seed = 0;
};

enum class TraceCriterion { kSeedMeanSimilarity, kLeakageScore };

struct TraceEntry {
  std::size_t step = 0;
  std::string topic_id;
  TraceCriterion criterion = TraceCriterion::kLeakageScore;
  double score = 0.0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct SampleResult {
  SampleMethod method = SampleMethod::kHitsCutting;
  std::size_t target_topic_count = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> selected_topics;  // selection order
  std::vector<TraceEntry> selection_trace;
  std::optional<std::map<std::string, std::string>> grouping_map;

  friend bool operator==(const SampleResult&, const SampleResult&) = default;
};

struct SeedChoice {
  std::string topic_id;
  double mean_similarity = 0.0;
};

// Topic with the lowest mean similarity to all other topics (diagonal
// excluded). Exact ties go to the lexicographically smallest topic_id.
SeedChoice init_seed_topic(const SimilarityMatrix& matrix);

// mean(S) * max(S). Throws ComputationError on an empty set.
double leakage_score(std::span<const double> similarities);

// Greedy heterogeneity-informed selection of m topics. Each step adds the
// unselected topic with the lowest leakage score against the topics chosen
// so far; scores are recomputed every step.
SampleResult hits_sample(std::span<const TopicRepresentation> topics, std::size_t m);

// Uniform sample without replacement, reproducible from seed. Selection
// order is draw order.
SampleResult random_sample(std::vector<std::string> topic_ids, std::size_t m, std::uint64_t seed);

// Maps every unselected topic to its most similar selected topic (ties to
// the smallest topic_id) and marks the result as hits-grouping.
SampleResult group_unselected(std::span<const TopicRepresentation> topics, const SampleResult& result);

SampleResult run_sampler(std::span<const TopicRepresentation> topics, const SamplerConfig& config);

inline constexpr std::string_view kSampleFormat = "hits-sample";
inline constexpr int kSampleVersion = 1;

io::Json sample_to_json(const SampleResult& result);
SampleResult sample_from_json(const io::Json& doc);

}  // namespace hits
