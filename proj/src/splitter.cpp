#include "hits/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "hits/error.hpp"
#include "hits/rng.hpp"

namespace hits {

namespace {

std::string padded(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

struct DocRef {
  std::size_t pos;  // index into corpus.documents()
  const Document* doc;
};

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

std::vector<std::vector<std::string>> partition_topics(std::vector<std::string> selected, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be >= 2");
  if (k > selected.size()) {
    throw ConfigError("fold count " + std::to_string(k) + " exceeds the " + std::to_string(selected.size()) +
                      " selected topics");
  }
  std::sort(selected.begin(), selected.end());
  Rng rng(derive_seed(seed, {0x666f6c6473ULL}));
  rng.shuffle(selected);
  std::vector<std::vector<std::string>> folds(k);
  const std::size_t base = selected.size() / k;
  const std::size_t extra = selected.size() % k;
  std::size_t next = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].assign(selected.begin() + static_cast<std::ptrdiff_t>(next),
                    selected.begin() + static_cast<std::ptrdiff_t>(next + size));
    std::sort(folds[f].begin(), folds[f].end());
    next += size;
  }
  return folds;
}

std::vector<VerificationPair> generate_pairs(const Corpus& corpus, const std::set<std::string>& topics,
                                             std::uint64_t seed, const SplitConfig& config,
                                             std::string_view id_prefix) {
  if (topics.empty()) throw ConfigError("pair generation needs at least one topic");
  if (!(config.positive_fraction > 0.0 && config.positive_fraction < 1.0)) {
    throw ConfigError("positive_fraction must lie in (0, 1)");
  }
  Rng rng(seed);

  std::vector<std::size_t> scope;  // corpus positions, corpus order
  std::map<std::string, std::vector<std::size_t>> by_author;
  const auto& docs = corpus.documents();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!topics.count(docs[i].topic_id)) continue;
    scope.push_back(i);
    by_author[docs[i].author_id].push_back(i);
  }
  if (scope.empty()) throw DataError("no documents in the requested topics");

  // Positives: per author, shuffled candidate pairs, cross-topic first, capped.
  std::vector<std::pair<std::size_t, std::size_t>> positives;
  for (const auto& [author, own] : by_author) {
    if (own.size() < 2) continue;
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t a = 0; a < own.size(); ++a) {
      for (std::size_t b = a + 1; b < own.size(); ++b) candidates.push_back({own[a], own[b]});
    }
    rng.shuffle(candidates);
    if (config.prefer_cross_topic_positives) {
      std::stable_partition(candidates.begin(), candidates.end(), [&](const auto& p) {
        return docs[p.first].topic_id != docs[p.second].topic_id;
      });
    }
    std::size_t take = candidates.size();
    if (config.max_pairs_per_author) take = std::min(take, *config.max_pairs_per_author);
    positives.insert(positives.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take));
  }
  if (positives.empty()) throw DataError("no author has two or more documents in scope; cannot form positive pairs");

  std::size_t sum_sq = 0;
  for (const auto& [author, own] : by_author) sum_sq += own.size() * own.size();
  const std::size_t negative_universe = (scope.size() * scope.size() - sum_sq) / 2;
  if (negative_universe == 0) throw DataError("all documents in scope share one author; cannot form negative pairs");

  const double f = config.positive_fraction;
  std::size_t n_pos = positives.size();
  auto negatives_for = [f](std::size_t p) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(p) * (1.0 - f) / f));
  };
  std::size_t n_neg = negatives_for(n_pos);
  if (n_neg > negative_universe) {
    n_pos = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(negative_universe) * f / (1.0 - f))));
    n_pos = std::min(n_pos, positives.size());
    n_neg = std::min(negatives_for(n_pos), negative_universe);
    rng.shuffle(positives);
    positives.resize(n_pos);
  }

  std::vector<std::pair<std::size_t, std::size_t>> negatives;
  negatives.reserve(n_neg);
  if (n_neg * 2 >= negative_universe) {
    for (std::size_t a = 0; a < scope.size(); ++a) {
      for (std::size_t b = a + 1; b < scope.size(); ++b) {
        if (docs[scope[a]].author_id != docs[scope[b]].author_id) negatives.push_back({scope[a], scope[b]});
      }
    }
    rng.shuffle(negatives);
    negatives.resize(n_neg);
  } else {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (negatives.size() < n_neg) {
      const std::size_t a = scope[rng.below(scope.size())];
      const std::size_t b = scope[rng.below(scope.size())];
      if (docs[a].author_id == docs[b].author_id) continue;
      const auto key = ordered(a, b);
      if (seen.insert(key).second) negatives.push_back(key);
    }
  }

  struct Raw {
    std::size_t a, b;
    bool label;
  };
  std::vector<Raw> all;
  all.reserve(positives.size() + negatives.size());
  for (auto [a, b] : positives) all.push_back({a, b, true});
  for (auto [a, b] : negatives) all.push_back({a, b, false});
  rng.shuffle(all);

  const std::size_t width = std::max<std::size_t>(5, std::to_string(all.size()).size());
  std::vector<VerificationPair> pairs;
  pairs.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& da = docs[all[i].a].doc_id;
    const auto& db = docs[all[i].b].doc_id;
    const bool swap = db < da;
    pairs.push_back({std::string(id_prefix) + padded(i, width), swap ? db : da, swap ? da : db, all[i].label});
  }
  return pairs;
}

Corpus sampled_corpus(const Corpus& corpus, const SampleResult& sample) {
  const Corpus relabeled = sample.grouping_map ? relabel_topics(corpus, *sample.grouping_map) : corpus;
  return filter_to_topics(relabeled, std::set<std::string>(sample.selected_topics.begin(), sample.selected_topics.end()));
}

std::vector<EvaluationSplit> build_splits(const Corpus& corpus, const SampleResult& sample, const SplitConfig& config) {
  const Corpus scoped = sampled_corpus(corpus, sample);
  const auto folds = partition_topics(sample.selected_topics, config.fold_count, derive_seed(config.pair_seed, {0}));
  std::vector<EvaluationSplit> splits;
  splits.reserve(folds.size());
  for (std::size_t i = 0; i < folds.size(); ++i) {
    EvaluationSplit s;
    s.fold_id = i;
    s.test_topics = folds[i];
    for (std::size_t j = 0; j < folds.size(); ++j) {
      if (j != i) s.train_topics.insert(s.train_topics.end(), folds[j].begin(), folds[j].end());
    }
    std::sort(s.train_topics.begin(), s.train_topics.end());
    const std::string fold = "f" + padded(i, 2);
    s.train_pairs = generate_pairs(scoped, {s.train_topics.begin(), s.train_topics.end()},
                                   derive_seed(config.pair_seed, {i + 1, 1}), config, fold + "-train-");
    s.test_pairs = generate_pairs(scoped, {s.test_topics.begin(), s.test_topics.end()},
                                  derive_seed(config.pair_seed, {i + 1, 2}), config, fold + "-test-");
    splits.push_back(std::move(s));
  }
  return splits;
}

SplitSimilarity split_topic_similarity(const EvaluationSplit& split, std::span<const TopicRepresentation> topics) {
  if (split.train_topics.empty() || split.test_topics.empty()) {
    throw ComputationError("split has no train or no test topics");
  }
  SplitSimilarity out{0.0, -1.0};
  std::size_t count = 0;
  for (const auto& tr : split.train_topics) {
    const auto& a = find_topic(topics, tr);
    for (const auto& te : split.test_topics) {
      const double s = cosine(a.vector, find_topic(topics, te).vector);
      out.mean += s;
      out.max = std::max(out.max, s);
      ++count;
    }
  }
  out.mean /= static_cast<double>(count);
  return out;
}

io::Json split_to_json(const EvaluationSplit& split) {
  auto pairs_json = [](const std::vector<VerificationPair>& pairs) {
    io::Json arr = io::Json::array();
    for (const auto& p : pairs) arr.push_back(io::Json::array({p.pair_id, p.doc_a, p.doc_b, p.label}));
    return arr;
  };
  io::Json doc;
  doc["format"] = kSplitFormat;
  doc["version"] = kSplitVersion;
  doc["fold_id"] = split.fold_id;
  doc["train_topics"] = split.train_topics;
  doc["test_topics"] = split.test_topics;
  doc["pair_fields"] = {"pair_id", "doc_a", "doc_b", "label"};
  doc["train_pairs"] = pairs_json(split.train_pairs);
  doc["test_pairs"] = pairs_json(split.test_pairs);
  return doc;
}

EvaluationSplit split_from_json(const io::Json& doc) {
  try {
    if (doc.at("format") != kSplitFormat || doc.at("version") != kSplitVersion) {
      throw DataError("not a hits-split v1 document");
    }
    auto read_pairs = [](const io::Json& arr) {
      std::vector<VerificationPair> pairs;
      for (const auto& p : arr) {
        pairs.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>(), p.at(2).get<std::string>(),
                         p.at(3).get<bool>()});
      }
      return pairs;
    };
    EvaluationSplit s;
    s.fold_id = doc.at("fold_id").get<std::size_t>();
    s.train_topics = doc.at("train_topics").get<std::vector<std::string>>();
    s.test_topics = doc.at("test_topics").get<std::vector<std::string>>();
    s.train_pairs = read_pairs(doc.at("train_pairs"));
    s.test_pairs = read_pairs(doc.at("test_pairs"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed split manifest: ") + e.what());
  }
}

}  // namespace hits
