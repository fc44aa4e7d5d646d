#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hits/io.hpp"

namespace hits {

struct PredictionEntry {
  std::string pair_id;
  double score = 0.5;
  bool label = false;
};

// Scores must lie in [0, 1]; pair_ids must be unique.
class PredictionSet {
 public:
  PredictionSet() = default;
  explicit PredictionSet(std::vector<PredictionEntry> entries);

  const std::vector<PredictionEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<PredictionEntry> entries_;
};

enum class Decision { kPositive, kNegative, kNonAnswer };

// > 0.5 positive, < 0.5 negative, exactly 0.5 non-answer.
Decision classify(double score);

// Counts used by the answer-based metrics. Non-answers are split by label.
struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  std::size_t unanswered_positive = 0;
  std::size_t unanswered_negative = 0;

  std::size_t unanswered() const noexcept { return unanswered_positive + unanswered_negative; }
  std::size_t total() const noexcept { return tp + fp + tn + fn + unanswered(); }
};

Confusion confusion(const PredictionSet& preds);

// Rank-based ROC AUC on the scores; ties count one half.
double auc(const PredictionSet& preds);

// (n_c + n_u * n_c / n) / n.
double c_at_1(const PredictionSet& preds);

// 1.25 tp / (1.25 tp + 0.25 (fn + nu) + fp), every non-answer counted in nu.
double f05u(const PredictionSet& preds);

struct F1Result {
  double value = 0.0;
  bool degenerate = false;  // zero denominator, value reported as 0
};

// Non-answers count as negative predictions.
F1Result f1(const PredictionSet& preds);

enum class Metric { kAuc, kC1, kF05u, kF1, kOverall };

inline constexpr Metric kAllMetrics[] = {Metric::kAuc, Metric::kC1, Metric::kF05u, Metric::kF1, Metric::kOverall};

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view name);

struct MetricReport {
  double auc = 0.0;
  double c1 = 0.0;
  double f05u = 0.0;
  double f1 = 0.0;
  double overall = 0.0;
  bool f1_degenerate = false;

  double get(Metric metric) const;
};

MetricReport report(const PredictionSet& preds);

// Same metrics over parallel score/label arrays, without pair ids. Used on
// hot paths such as calibration grid search.
MetricReport report(std::span<const double> scores, std::span<const std::uint8_t> labels);

io::Json metric_report_to_json(const MetricReport& r);
MetricReport metric_report_from_json(const io::Json& doc);

// One aligned text row: AUC, c@1, F0.5u, F1, Overall (3 decimals).
std::string metric_row(std::string_view label, const MetricReport& r);
std::string metric_header(std::string_view label_title);

}  // namespace hits
