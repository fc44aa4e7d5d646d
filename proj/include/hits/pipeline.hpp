#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hits/analysis.hpp"
#include "hits/corpus.hpp"
#include "hits/io.hpp"
#include "hits/metrics.hpp"
#include "hits/sampler.hpp"
#include "hits/splitter.hpp"
#include "hits/topic_repr.hpp"
#include "hits/verifier.hpp"

namespace hits {

// ---- in-memory evaluation ------------------------------------------------

struct ModelFoldResult {
  VerifierKind model = VerifierKind::kCharNGram;
  std::size_t fold_id = 0;
  PredictionSet predictions;
  MetricReport report;
  io::Json model_json;  // empty unless requested
};

// Trains every model on every fold and scores its test pairs. Jobs run on
// `workers` threads; results come back ordered by (fold, model) regardless
// of scheduling. Calibration seeds are derived from `seed` and the fold id.
std::vector<ModelFoldResult> evaluate_splits(const Corpus& corpus, std::span<const EvaluationSplit> splits,
                                             std::span<const VerifierKind> models, const VerifierConfig& config,
                                             std::uint64_t seed, std::size_t workers = 1, bool keep_models = false);

// Groups results per fold: model name -> report.
std::vector<FoldReports> fold_reports(std::span<const ModelFoldResult> results);

// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by any job is rethrown after all threads finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

// ---- file-based pipeline -------------------------------------------------

struct RunConfig {
  std::filesystem::path corpus_path;
  // Precomputed document embeddings; the built-in encoder is used when empty.
  std::optional<std::filesystem::path> embeddings_path;
  std::size_t encoder_dim = 1024;
  EncoderConfig encoder;

  std::size_t topic_count = 0;  // m
  bool include_hits = true;
  bool hits_grouping = false;
  std::vector<std::uint64_t> random_seeds = {0, 1, 2, 3, 4};

  SplitConfig split;
  std::vector<VerifierKind> models = {VerifierKind::kCharNGram, VerifierKind::kPpm, VerifierKind::kTopicFit};
  VerifierConfig verifier;

  std::filesystem::path output_dir = "hits-out";
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool shortcut_test = true;
};

io::Json run_config_to_json(const RunConfig& config);

// Throws ConfigError for missing input paths or impossible parameters.
void validate_run_config(const RunConfig& config);

// One evaluated dataset: the HITS sample or one random seed.
struct SetupInfo {
  std::string name;     // file-system name: "hits", "random-s0", ...
  std::string display;  // table label: "HITS", "R0", ...
  SampleMethod method = SampleMethod::kHitsCutting;
  std::uint64_t seed = 0;
};

std::vector<SetupInfo> planned_setups(const RunConfig& config);

// Output tree under config.output_dir:
//   embeddings.tsv                      (built-in encoder only)
//   samples/<setup>.json
//   splits/<setup>/fold-NN.json
//   models/<setup>/<model>/fold-NN.json
//   predictions/<setup>/<model>/fold-NN.tsv
//   metrics/<setup>/<model>/fold-NN.json, metrics/<setup>/summary.txt
//   reports/<table>.json, reports/<table>.txt, reports/stability-<setup>.json
//   manifest.json
std::filesystem::path stage_encode(const RunConfig& config, const std::filesystem::path& out);
void stage_sample(const RunConfig& config);
void stage_split(const RunConfig& config);
void stage_evaluate(const RunConfig& config);
void stage_report(const RunConfig& config);
void write_manifest(const RunConfig& config);

// All stages in order.
void run_all(const RunConfig& config);

// Document embeddings for the run: ingested when a path is configured,
// otherwise <output_dir>/embeddings.tsv when present, otherwise encoded.
std::vector<DocumentEmbedding> run_embeddings(const RunConfig& config, const Corpus& corpus);

}  // namespace hits
