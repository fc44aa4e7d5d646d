#include "hits/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "hits/error.hpp"
#include "hits/rng.hpp"

namespace hits {

namespace fs = std::filesystem;

namespace {

std::string fold_name(std::size_t fold_id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fold-%02zu", fold_id);
  return buf;
}

fs::path sample_path(const RunConfig& c, const SetupInfo& s) { return c.output_dir / "samples" / (s.name + ".json"); }
fs::path split_dir(const RunConfig& c, const SetupInfo& s) { return c.output_dir / "splits" / s.name; }

std::vector<EvaluationSplit> load_splits(const RunConfig& c, const SetupInfo& s) {
  const fs::path dir = split_dir(c, s);
  if (!fs::is_directory(dir)) throw ConfigError("no splits for setup " + s.name + " under " + dir.string());
  std::vector<EvaluationSplit> splits;
  for (std::size_t i = 0;; ++i) {
    const fs::path p = dir / (fold_name(i) + ".json");
    if (!fs::exists(p)) break;
    splits.push_back(split_from_json(io::read_json(p)));
  }
  if (splits.empty()) throw ConfigError("no split files in " + dir.string());
  return splits;
}

SampleResult load_sample(const RunConfig& c, const SetupInfo& s) {
  const fs::path p = sample_path(c, s);
  if (!fs::exists(p)) throw ConfigError("missing sample file " + p.string() + " (run the sample stage first)");
  return sample_from_json(io::read_json(p));
}

io::Json table_file(const Table& t) { return table_to_json(t); }

void write_table(const RunConfig& c, const Table& t) {
  io::write_json(c.output_dir / "reports" / (t.name + ".json"), table_file(t));
  io::write_file(c.output_dir / "reports" / (t.name + ".txt"), render_table(t));
}

VerifierConfig fold_config(const VerifierConfig& base, std::uint64_t seed, std::size_t fold_id) {
  VerifierConfig c = base;
  const std::uint64_t s = derive_seed(seed, {0x666f6c64ULL, fold_id});
  c.char_ngram.seed = s;
  c.topic_fit.seed = s;
  return c;
}

}  // namespace

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<ModelFoldResult> evaluate_splits(const Corpus& corpus, std::span<const EvaluationSplit> splits,
                                             std::span<const VerifierKind> models, const VerifierConfig& config,
                                             std::uint64_t seed, std::size_t workers, bool keep_models) {
  if (models.empty()) throw ConfigError("no models selected");
  std::vector<ModelFoldResult> results(splits.size() * models.size());
  parallel_for(results.size(), workers, [&](std::size_t job) {
    const EvaluationSplit& split = splits[job / models.size()];
    const VerifierKind kind = models[job % models.size()];
    const auto verifier = train_verifier(kind, split.train_pairs, corpus, fold_config(config, seed, split.fold_id));
    ModelFoldResult r;
    r.model = kind;
    r.fold_id = split.fold_id;
    r.predictions = predict(*verifier, split.test_pairs, corpus);
    r.report = report(r.predictions);
    if (keep_models) r.model_json = verifier_to_json(*verifier);
    results[job] = std::move(r);
  });
  return results;
}

std::vector<FoldReports> fold_reports(std::span<const ModelFoldResult> results) {
  std::map<std::size_t, FoldReports> by_fold;
  for (const auto& r : results) by_fold[r.fold_id][std::string(to_string(r.model))] = r.report;
  std::vector<FoldReports> out;
  for (auto& [_, f] : by_fold) out.push_back(std::move(f));
  return out;
}

io::Json run_config_to_json(const RunConfig& c) {
  io::Json doc;
  doc["corpus"] = c.corpus_path.generic_string();
  if (c.embeddings_path) {
    doc["embeddings"] = c.embeddings_path->generic_string();
  } else {
    doc["encoder"] = {{"dim", c.encoder_dim},
                      {"sublinear_tf", c.encoder.sublinear_tf},
                      {"signed_hash", c.encoder.signed_hash},
                      {"hash_seed", c.encoder.hash_seed}};
  }
  doc["topic_count"] = c.topic_count;
  doc["include_hits"] = c.include_hits;
  doc["hits_grouping"] = c.hits_grouping;
  doc["random_seeds"] = c.random_seeds;
  io::Json split;
  split["fold_count"] = c.split.fold_count;
  split["pair_seed"] = c.split.pair_seed;
  split["positive_fraction"] = c.split.positive_fraction;
  split["max_pairs_per_author"] =
      c.split.max_pairs_per_author ? io::Json(*c.split.max_pairs_per_author) : io::Json(nullptr);
  split["prefer_cross_topic_positives"] = c.split.prefer_cross_topic_positives;
  doc["split"] = std::move(split);
  io::Json models = io::Json::array();
  for (auto m : c.models) models.push_back(to_string(m));
  doc["models"] = std::move(models);
  doc["verifier"] = verifier_config_to_json(c.verifier);
  doc["seed"] = c.seed;
  doc["shortcut_test"] = c.shortcut_test;
  return doc;
}

void validate_run_config(const RunConfig& c) {
  if (c.corpus_path.empty()) throw ConfigError("no corpus path given");
  if (!fs::exists(c.corpus_path)) throw ConfigError("corpus file not found: " + c.corpus_path.string());
  if (c.embeddings_path && !fs::exists(*c.embeddings_path)) {
    throw ConfigError("embeddings file not found: " + c.embeddings_path->string());
  }
  if (!c.embeddings_path && c.encoder_dim < 2) throw ConfigError("encoder dimension must be >= 2");
  if (c.topic_count < 2) throw ConfigError("topic count m must be >= 2");
  if (!c.include_hits && c.random_seeds.empty()) throw ConfigError("no sampling setups selected");
  if (c.split.fold_count < 2) throw ConfigError("fold count must be >= 2");
  if (!(c.split.positive_fraction > 0.0 && c.split.positive_fraction < 1.0)) {
    throw ConfigError("positive fraction must lie in (0, 1)");
  }
  if (c.models.empty()) throw ConfigError("no models selected");
  if (c.workers == 0) throw ConfigError("worker count must be >= 1");
  std::vector<std::uint64_t> seeds = c.random_seeds;
  std::sort(seeds.begin(), seeds.end());
  if (std::adjacent_find(seeds.begin(), seeds.end()) != seeds.end()) throw ConfigError("duplicate random seed");
}

std::vector<SetupInfo> planned_setups(const RunConfig& c) {
  std::vector<SetupInfo> out;
  if (c.include_hits) {
    out.push_back({c.hits_grouping ? "hits-grouping" : "hits", c.hits_grouping ? "HITS-G" : "HITS",
                   c.hits_grouping ? SampleMethod::kHitsGrouping : SampleMethod::kHitsCutting, 0});
  }
  for (auto s : c.random_seeds) {
    out.push_back({"random-s" + std::to_string(s), "R" + std::to_string(s), SampleMethod::kRandom, s});
  }
  return out;
}

std::vector<DocumentEmbedding> run_embeddings(const RunConfig& c, const Corpus& corpus) {
  if (c.embeddings_path) return ingest_embeddings(*c.embeddings_path, corpus);
  const fs::path cached = c.output_dir / "embeddings.tsv";
  if (fs::exists(cached)) return ingest_embeddings(cached, corpus);
  return encode_tfidf_hashed(corpus, c.encoder_dim, c.encoder);
}

fs::path stage_encode(const RunConfig& c, const fs::path& out) {
  if (!fs::exists(c.corpus_path)) throw ConfigError("corpus file not found: " + c.corpus_path.string());
  const Corpus corpus = load_corpus(c.corpus_path);
  const auto embeddings = c.embeddings_path ? ingest_embeddings(*c.embeddings_path, corpus)
                                            : encode_tfidf_hashed(corpus, c.encoder_dim, c.encoder);
  io::write_file(out, serialize_embeddings(embeddings));
  return out;
}

namespace {

void check_topic_count(const RunConfig& c, const Corpus& corpus) {
  if (c.topic_count > corpus.topic_count()) {
    throw ConfigError("topic count m = " + std::to_string(c.topic_count) + " exceeds the " +
                      std::to_string(corpus.topic_count()) + " topics in the corpus");
  }
}

void write_stability(const RunConfig& c, const SetupInfo& s, const StabilityReport& st) {
  io::Json sj;
  sj["format"] = "hits-stability";
  sj["version"] = 1;
  sj["setup"] = s.name;
  io::Json per = io::Json::object();
  for (const auto& ms : st.per_metric) {
    per[std::string(to_string(ms.metric))] = {
        {"mean_correlation", ms.mean_correlation}, {"undefined_pairs", ms.undefined_pairs}, {"matrix", ms.matrix}};
  }
  sj["metrics"] = std::move(per);
  sj["grand_average"] = st.grand_average;
  io::write_json(c.output_dir / "reports" / ("stability-" + s.name + ".json"), sj);
}

}  // namespace

void stage_sample(const RunConfig& c) {
  validate_run_config(c);
  const Corpus corpus = load_corpus(c.corpus_path);
  check_topic_count(c, corpus);
  const auto topics = build_topic_vectors(run_embeddings(c, corpus), corpus);
  for (const auto& s : planned_setups(c)) {
    SamplerConfig sc;
    sc.method = s.method;
    sc.target_topic_count = c.topic_count;
    sc.seed = s.seed;
    io::write_json(sample_path(c, s), sample_to_json(run_sampler(topics, sc)));
  }
}

void stage_split(const RunConfig& c) {
  validate_run_config(c);
  if (c.split.fold_count > c.topic_count) throw ConfigError("fold count k exceeds the topic count m");
  const Corpus corpus = load_corpus(c.corpus_path);
  for (const auto& s : planned_setups(c)) {
    const auto splits = build_splits(corpus, load_sample(c, s), c.split);
    fs::remove_all(split_dir(c, s));
    for (const auto& sp : splits) io::write_json(split_dir(c, s) / (fold_name(sp.fold_id) + ".json"), split_to_json(sp));
  }
}

void stage_evaluate(const RunConfig& c) {
  validate_run_config(c);
  const Corpus corpus = load_corpus(c.corpus_path);
  for (const auto& s : planned_setups(c)) {
    const auto splits = load_splits(c, s);
    const auto results = evaluate_splits(corpus, splits, c.models, c.verifier, c.seed, c.workers, true);
    std::string summary = metric_header("model/fold");
    for (const auto& r : results) {
      const std::string model(to_string(r.model));
      const std::string fold = fold_name(r.fold_id);
      io::write_json(c.output_dir / "models" / s.name / model / (fold + ".json"), r.model_json);
      io::write_file(c.output_dir / "predictions" / s.name / model / (fold + ".tsv"),
                     predictions_to_tsv(r.predictions));
      io::Json m;
      m["format"] = "hits-metrics";
      m["version"] = 1;
      m["setup"] = s.name;
      m["model"] = model;
      m["fold_id"] = r.fold_id;
      m["report"] = metric_report_to_json(r.report);
      io::write_json(c.output_dir / "metrics" / s.name / model / (fold + ".json"), m);
      summary += metric_row(model + "/" + fold, r.report);
    }
    io::write_file(c.output_dir / "metrics" / s.name / "summary.txt", summary);
  }
}

void stage_report(const RunConfig& c) {
  validate_run_config(c);
  const Corpus corpus = load_corpus(c.corpus_path);
  const auto embeddings = run_embeddings(c, corpus);
  const auto setups = planned_setups(c);
  // Rankings need at least two models; with one, the ranking reports are skipped.
  const bool rankable = c.models.size() >= 2;

  std::vector<SetupResults> results;
  std::vector<std::vector<CrossPair>> hits_pairs;
  std::vector<CrossPair> top_hits;
  std::vector<CrossPair> top_random;
  std::vector<double> sim_mean[2];
  std::vector<double> sim_max[2];
  for (const auto& s : setups) {
    const bool is_hits = s.method != SampleMethod::kRandom;
    const auto splits = load_splits(c, s);
    SetupResults sr{s.display, is_hits, {}};
    for (const auto& sp : splits) {
      FoldReports fold;
      for (auto m : c.models) {
        const fs::path p = c.output_dir / "metrics" / s.name / std::string(to_string(m)) / (fold_name(sp.fold_id) + ".json");
        if (!fs::exists(p)) throw ConfigError("missing metrics file " + p.string() + " (run the evaluate stage first)");
        fold[std::string(to_string(m))] = metric_report_from_json(io::read_json(p).at("report"));
      }
      sr.folds.push_back(std::move(fold));
    }
    if (rankable) write_stability(c, s, stability(sr.folds));
    results.push_back(std::move(sr));

    const Corpus scoped = sampled_corpus(corpus, load_sample(c, s));
    const auto topics = build_topic_vectors(embeddings, scoped);
    double mean_sum = 0.0;
    double max_sum = 0.0;
    auto& top = is_hits ? top_hits : top_random;
    for (const auto& sp : splits) {
      const auto sim = split_topic_similarity(sp, topics);
      mean_sum += sim.mean;
      max_sum += sim.max;
      for (auto& p : top_similar_cross_pairs(sp, topics, 5)) top.push_back(std::move(p));
    }
    sim_mean[is_hits].push_back(mean_sum / static_cast<double>(splits.size()));
    sim_max[is_hits].push_back(max_sum / static_cast<double>(splits.size()));
  }

  write_table(c, main_results_table(results));
  if (rankable) {
    write_table(c, ranking_stability_table(results));
    write_table(c, ranking_analysis_table(results));
  }

  auto avg = [](const std::vector<double>& v) { return v.empty() ? 0.0 : mean(v); };
  const TopicSimilarityRow row{c.topic_count, avg(sim_mean[0]), avg(sim_mean[1]), avg(sim_max[0]), avg(sim_max[1])};
  write_table(c, topic_similarity_table(std::span<const TopicSimilarityRow>(&row, 1)));

  auto top5 = [](std::vector<CrossPair> v) {
    std::sort(v.begin(), v.end(), [](const CrossPair& a, const CrossPair& b) {
      if (a.sim != b.sim) return a.sim > b.sim;
      if (a.train_topic != b.train_topic) return a.train_topic < b.train_topic;
      return a.test_topic < b.test_topic;
    });
    // A pair seen from both sides (train/test swapped across folds) is kept once.
    std::vector<CrossPair> out;
    for (auto& p : v) {
      if (out.size() == 5) break;
      const bool seen = std::any_of(out.begin(), out.end(), [&](const CrossPair& q) {
        return q.train_topic == p.test_topic && q.test_topic == p.train_topic;
      });
      if (!seen) out.push_back(std::move(p));
    }
    return out;
  };
  write_table(c, topic_examples_table(top5(top_hits), top5(top_random)));

  if (c.shortcut_test) {
    ModelScores hits_scores;
    ModelScores random_scores;
    for (auto m : c.models) {
      const std::string id(to_string(m));
      std::vector<double> h;
      std::vector<double> r;
      for (const auto& sr : results) {
        for (const auto& f : sr.folds) (sr.is_hits ? h : r).push_back(f.at(id).overall);
      }
      if (h.empty() || r.empty()) {
        throw ConfigError("the topic shortcut test needs both a HITS and a random setup");
      }
      hits_scores[id] = mean(h);
      random_scores[id] = mean(r);
    }
    write_table(c, shortcut_table(shortcut_test(hits_scores, random_scores)));
  }
}

void write_manifest(const RunConfig& c) {
  io::Json doc;
  doc["format"] = "hits-manifest";
  doc["version"] = 1;
  doc["config"] = run_config_to_json(c);
  io::Json inputs;
  inputs["corpus"] = {{"path", c.corpus_path.generic_string()}, {"sha256", io::sha256_file(c.corpus_path)}};
  if (c.embeddings_path) {
    inputs["embeddings"] = {{"path", c.embeddings_path->generic_string()},
                            {"sha256", io::sha256_file(*c.embeddings_path)}};
  }
  doc["inputs"] = std::move(inputs);
  io::Json setups = io::Json::array();
  for (const auto& s : planned_setups(c)) {
    setups.push_back({{"name", s.name}, {"method", to_string(s.method)}, {"seed", s.seed}});
  }
  doc["setups"] = std::move(setups);
  std::vector<std::string> files;
  if (fs::exists(c.output_dir)) {
    for (const auto& e : fs::recursive_directory_iterator(c.output_dir)) {
      if (!e.is_regular_file()) continue;
      const std::string rel = fs::relative(e.path(), c.output_dir).generic_string();
      if (rel != "manifest.json") files.push_back(rel);
    }
  }
  std::sort(files.begin(), files.end());
  io::Json outputs = io::Json::object();
  for (const auto& f : files) outputs[f] = io::sha256_file(c.output_dir / f);
  doc["outputs"] = std::move(outputs);
  io::write_json(c.output_dir / "manifest.json", doc);
}

void run_all(const RunConfig& c) {
  validate_run_config(c);
  if (c.split.fold_count > c.topic_count) throw ConfigError("fold count k exceeds the topic count m");
  if (c.shortcut_test && (!c.include_hits || c.random_seeds.empty())) {
    throw ConfigError("the topic shortcut test needs both a HITS and a random setup (or disable it)");
  }
  check_topic_count(c, load_corpus(c.corpus_path));
  if (!c.embeddings_path) stage_encode(c, c.output_dir / "embeddings.tsv");
  stage_sample(c);
  stage_split(c);
  stage_evaluate(c);
  stage_report(c);
  write_manifest(c);
}

}  // namespace hits
