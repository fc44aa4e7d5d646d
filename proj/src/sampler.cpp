#include "hits/sampler.hpp"

#include <algorithm>
#include <set>

#include "hits/error.hpp"
#include "hits/rng.hpp"

namespace hits {

namespace {

// Lower score wins; exact ties go to the smaller id.
bool better(double score, std::string_view id, double best_score, std::string_view best_id) {
  if (score < best_score) return true;
  if (score > best_score) return false;
  return id < best_id;
}

std::vector<TopicRepresentation> sorted_by_id(std::span<const TopicRepresentation> topics) {
  std::vector<TopicRepresentation> sorted(topics.begin(), topics.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.topic_id < b.topic_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].topic_id == sorted[i - 1].topic_id) {
      throw IntegrityError("duplicate topic \"" + sorted[i].topic_id + "\"");
    }
  }
  return sorted;
}

}  // namespace

std::string_view to_string(SampleMethod method) {
  switch (method) {
    case SampleMethod::kHitsCutting:
      return "hits-cutting";
    case SampleMethod::kHitsGrouping:
      return "hits-grouping";
    case SampleMethod::kRandom:
      return "random";
  }
  return "unknown";
}

SampleMethod parse_sample_method(std::string_view name) {
  if (name == "hits-cutting" || name == "hits") return SampleMethod::kHitsCutting;
  if (name == "hits-grouping") return SampleMethod::kHitsGrouping;
  if (name == "random") return SampleMethod::kRandom;
  throw ConfigError("unknown sampling method \"" + std::string(name) + "\"");
}

SeedChoice init_seed_topic(const SimilarityMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n < 2) throw ConfigError("seed selection needs at least 2 topics");
  SeedChoice best{"", 0.0};
  bool have = false;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += matrix(i, j);
    }
    const double mean = sum / static_cast<double>(n - 1);
    if (!have || better(mean, matrix.ids()[i], best.mean_similarity, best.topic_id)) {
      best = {matrix.ids()[i], mean};
      have = true;
    }
  }
  return best;
}

double leakage_score(std::span<const double> similarities) {
  if (similarities.empty()) throw ComputationError("leakage score of an empty similarity set");
  double sum = 0.0;
  double max = similarities.front();
  for (double s : similarities) {
    sum += s;
    max = std::max(max, s);
  }
  return (sum / static_cast<double>(similarities.size())) * max;
}

SampleResult hits_sample(std::span<const TopicRepresentation> topics, std::size_t m) {
  if (m < 2) throw ConfigError("target topic count must be >= 2");
  if (m > topics.size()) {
    throw ConfigError("target topic count " + std::to_string(m) + " exceeds the " +
                      std::to_string(topics.size()) + " available topics");
  }
  const auto sorted = sorted_by_id(topics);
  const SimilarityMatrix sim = topic_similarity_matrix(sorted);
  const std::size_t n = sorted.size();

  SampleResult result;
  result.method = SampleMethod::kHitsCutting;
  result.target_topic_count = m;

  const SeedChoice seed = init_seed_topic(sim);
  std::vector<std::size_t> chosen{sim.index_of(seed.topic_id)};
  std::vector<bool> taken(n, false);
  taken[chosen.front()] = true;
  result.selected_topics.push_back(seed.topic_id);
  result.selection_trace.push_back({0, seed.topic_id, TraceCriterion::kSeedMeanSimilarity, seed.mean_similarity});

  std::vector<double> sims;
  while (chosen.size() < m) {
    std::size_t best = n;
    double best_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      sims.clear();
      for (std::size_t j : chosen) sims.push_back(sim(i, j));
      const double score = leakage_score(sims);
      if (best == n || better(score, sorted[i].topic_id, best_score, sorted[best].topic_id)) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = true;
    chosen.push_back(best);
    result.selected_topics.push_back(sorted[best].topic_id);
    result.selection_trace.push_back(
        {chosen.size() - 1, sorted[best].topic_id, TraceCriterion::kLeakageScore, best_score});
  }
  return result;
}

SampleResult random_sample(std::vector<std::string> topic_ids, std::size_t m, std::uint64_t seed) {
  std::sort(topic_ids.begin(), topic_ids.end());
  if (std::adjacent_find(topic_ids.begin(), topic_ids.end()) != topic_ids.end()) {
    throw IntegrityError("duplicate topic ids passed to random sampling");
  }
  if (m > topic_ids.size()) {
    throw ConfigError("target topic count " + std::to_string(m) + " exceeds the " +
                      std::to_string(topic_ids.size()) + " available topics");
  }
  Rng rng(derive_seed(seed, {0x72616e646f6dULL}));
  // Partial Fisher-Yates: position i receives a uniform draw from the rest.
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(topic_ids.size() - i));
    std::swap(topic_ids[i], topic_ids[j]);
  }
  SampleResult result;
  result.method = SampleMethod::kRandom;
  result.target_topic_count = m;
  result.seed = seed;
  result.selected_topics.assign(topic_ids.begin(), topic_ids.begin() + static_cast<std::ptrdiff_t>(m));
  return result;
}

SampleResult group_unselected(std::span<const TopicRepresentation> topics, const SampleResult& result) {
  const auto sorted = sorted_by_id(topics);
  const SimilarityMatrix sim = topic_similarity_matrix(sorted);
  const std::set<std::string> selected(result.selected_topics.begin(), result.selected_topics.end());
  std::vector<std::size_t> selected_idx;
  for (const auto& id : selected) selected_idx.push_back(sim.index_of(id));  // ascending id order

  SampleResult grouped = result;
  grouped.method = SampleMethod::kHitsGrouping;
  grouped.grouping_map.emplace();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (selected.count(sorted[i].topic_id)) continue;
    std::size_t best = selected_idx.front();
    for (std::size_t j : selected_idx) {
      // Strictly greater keeps the smaller id on exact ties.
      if (sim(i, j) > sim(i, best)) best = j;
    }
    (*grouped.grouping_map)[sorted[i].topic_id] = sorted[best].topic_id;
  }
  return grouped;
}

SampleResult run_sampler(std::span<const TopicRepresentation> topics, const SamplerConfig& config) {
  switch (config.method) {
    case SampleMethod::kHitsCutting:
      return hits_sample(topics, config.target_topic_count);
    case SampleMethod::kHitsGrouping:
      return group_unselected(topics, hits_sample(topics, config.target_topic_count));
    case SampleMethod::kRandom: {
      std::vector<std::string> ids;
      for (const auto& t : topics) ids.push_back(t.topic_id);
      if (config.target_topic_count < 2) throw ConfigError("target topic count must be >= 2");
      return random_sample(std::move(ids), config.target_topic_count, config.seed);
    }
  }
  throw ConfigError("unknown sampling method");
}

io::Json sample_to_json(const SampleResult& result) {
  io::Json doc;
  doc["format"] = kSampleFormat;
  doc["version"] = kSampleVersion;
  doc["method"] = to_string(result.method);
  doc["m"] = result.target_topic_count;
  doc["seed"] = result.seed;
  doc["selected_topics"] = result.selected_topics;
  io::Json trace = io::Json::array();
  for (const auto& e : result.selection_trace) {
    trace.push_back({{"step", e.step},
                     {"topic_id", e.topic_id},
                     {"criterion", e.criterion == TraceCriterion::kSeedMeanSimilarity ? "seed_mean_similarity"
                                                                                      : "leakage_score"},
                     {"score", e.score}});
  }
  doc["selection_trace"] = std::move(trace);
  if (result.grouping_map) {
    io::Json map = io::Json::object();
    for (const auto& [from, to] : *result.grouping_map) map[from] = to;
    doc["grouping_map"] = std::move(map);
  } else {
    doc["grouping_map"] = nullptr;
  }
  return doc;
}

SampleResult sample_from_json(const io::Json& doc) {
  try {
    if (doc.at("format") != kSampleFormat || doc.at("version") != kSampleVersion) {
      throw DataError("not a hits-sample v1 document");
    }
    SampleResult r;
    r.method = parse_sample_method(doc.at("method").get<std::string>());
    r.target_topic_count = doc.at("m").get<std::size_t>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.selected_topics = doc.at("selected_topics").get<std::vector<std::string>>();
    for (const auto& e : doc.at("selection_trace")) {
      TraceEntry t;
      t.step = e.at("step").get<std::size_t>();
      t.topic_id = e.at("topic_id").get<std::string>();
      t.criterion = e.at("criterion") == "seed_mean_similarity" ? TraceCriterion::kSeedMeanSimilarity
                                                                 : TraceCriterion::kLeakageScore;
      t.score = e.at("score").get<double>();
      r.selection_trace.push_back(std::move(t));
    }
    if (!doc.at("grouping_map").is_null()) {
      r.grouping_map = doc.at("grouping_map").get<std::map<std::string, std::string>>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed sample document: ") + e.what());
  }
}

}  // namespace hits
