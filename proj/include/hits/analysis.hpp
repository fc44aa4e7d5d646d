#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hits/io.hpp"
#include "hits/metrics.hpp"
#include "hits/splitter.hpp"
#include "hits/topic_repr.hpp"

namespace hits {

using ModelScores = std::map<std::string, double>;
using RankMap = std::map<std::string, double>;

// Model id -> report for one fold.
using FoldReports = std::map<std::string, MetricReport>;

// Descending ranks (1 = best); tied scores share the mean of their positions.
RankMap rank_scores(const ModelScores& scores);

// Ranks the models of one fold on `metric`. Needs at least two models.
RankMap rank_models(const FoldReports& fold, Metric metric);

// Pearson correlation of two rank vectors. Throws UndefinedMetricError when
// either vector is constant, ComputationError on length mismatch or n < 2.
double spearman(std::span<const double> ranks_a, std::span<const double> ranks_b);
double spearman(const RankMap& a, const RankMap& b);

struct MetricStability {
  Metric metric = Metric::kOverall;
  std::vector<std::vector<double>> matrix;  // fold x fold, NaN where undefined
  std::vector<double> pairwise;             // defined upper-triangle entries, row-major
  std::size_t undefined_pairs = 0;
  double mean_correlation = 0.0;            // NaN when no pair is defined
};

struct StabilityReport {
  std::vector<MetricStability> per_metric;
  double grand_average = 0.0;

  const MetricStability& at(Metric metric) const;
};

// Pairwise Spearman of the per-fold rankings for each metric. Needs at least
// two folds over the same model set. Fold pairs involving a fully tied
// ranking are undefined and left out of the means.
StabilityReport stability(std::span<const FoldReports> folds, std::span<const Metric> metrics);
StabilityReport stability(std::span<const FoldReports> folds);

struct ShortcutEntry {
  std::string model;
  double score_random = 0.0;
  double score_hits = 0.0;
  double avg = 0.0;
  double diff = 0.0;
  std::size_t robustness_rank = 0;  // 1 = smallest diff
};

// Entries ordered by diff ascending, ties by model id.
struct ShortcutReport {
  std::vector<ShortcutEntry> entries;
};

ShortcutReport shortcut_test(const ModelScores& hits_scores, const ModelScores& random_scores);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
  double p_less = 0.5;     // H1: mean(a) < mean(b)
  double p_greater = 0.5;  // H1: mean(a) > mean(b)
};

// Unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
// Throws UndefinedMetricError when a sample has fewer than two values or
// both variances are zero.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct CrossPair {
  std::string train_topic;
  std::string test_topic;
  double sim = 0.0;
};

// The `count` most similar (train, test) topic pairs, descending; ties by
// train then test topic id.
std::vector<CrossPair> top_similar_cross_pairs(const EvaluationSplit& split,
                                               std::span<const TopicRepresentation> topics, std::size_t count);

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(std::span<const double> xs);

// ---- report tables -------------------------------------------------------

struct TableCell {
  std::string text;  // used when value is empty
  std::optional<double> value;
  std::optional<double> spread;  // printed as +-spread
  bool marked = false;           // significance asterisk
  bool best = false;

  static TableCell label(std::string s) { return {std::move(s), {}, {}, false, false}; }
  static TableCell number(double v, std::optional<double> spread = {}) { return {{}, v, spread, false, false}; }
};

struct Table {
  std::string name;
  std::string caption;
  std::vector<std::string> columns;
  std::vector<std::vector<TableCell>> rows;
  int digits = 3;
};

inline constexpr std::string_view kTableFormat = "hits-table";
inline constexpr int kTableVersion = 1;

io::Json table_to_json(const Table& table);
// Aligned plain text; best cells carry a trailing '^', marked cells '*'.
std::string render_table(const Table& table);

// Evaluation results of one dataset (the HITS sample or one random seed).
struct SetupResults {
  std::string name;  // "HITS", "R0", ...
  bool is_hits = false;
  std::vector<FoldReports> folds;
};

// Mean +- std per model and metric, pooled over HITS datasets and over
// random datasets. HITS cells significantly below random (one-sided Welch,
// p < alpha) are marked.
Table main_results_table(std::span<const SetupResults> setups, double alpha = 0.05);

// Mean pairwise Spearman per metric for every dataset plus R_avg.
Table ranking_stability_table(std::span<const SetupResults> setups, double alpha = 0.05);

// Mean +- std of each model's Overall rank across folds.
Table ranking_analysis_table(std::span<const SetupResults> setups);

struct TopicSimilarityRow {
  std::size_t topic_count = 0;
  double random_mean = 0.0;
  double hits_mean = 0.0;
  double random_max = 0.0;
  double hits_max = 0.0;
};
Table topic_similarity_table(std::span<const TopicSimilarityRow> rows);

Table topic_examples_table(std::span<const CrossPair> hits_pairs, std::span<const CrossPair> random_pairs);

Table shortcut_table(const ShortcutReport& report);

}  // namespace hits
