#include "hits/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "hits/error.hpp"

namespace hits {

PredictionSet::PredictionSet(std::vector<PredictionEntry> entries) : entries_(std::move(entries)) {
  std::unordered_set<std::string_view> ids;
  for (const auto& e : entries_) {
    if (!(e.score >= 0.0 && e.score <= 1.0)) {
      throw ComputationError("score for pair " + e.pair_id + " outside [0, 1]");
    }
    if (!ids.insert(e.pair_id).second) throw IntegrityError("duplicate pair_id " + e.pair_id);
  }
}

Decision classify(double score) {
  if (!(score >= 0.0 && score <= 1.0)) throw ComputationError("score outside [0, 1]");
  if (score > 0.5) return Decision::kPositive;
  if (score < 0.5) return Decision::kNegative;
  return Decision::kNonAnswer;
}

namespace {

struct Columns {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
};

Columns columns(const PredictionSet& preds) {
  Columns c;
  c.scores.reserve(preds.size());
  c.labels.reserve(preds.size());
  for (const auto& e : preds.entries()) {
    c.scores.push_back(e.score);
    c.labels.push_back(e.label ? 1 : 0);
  }
  return c;
}

void check_columns(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw ComputationError("score and label arrays differ in length");
}

Confusion confusion_of(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_columns(scores, labels);
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool label = labels[i] != 0;
    switch (classify(scores[i])) {
      case Decision::kPositive:
        ++(label ? c.tp : c.fp);
        break;
      case Decision::kNegative:
        ++(label ? c.fn : c.tn);
        break;
      case Decision::kNonAnswer:
        ++(label ? c.unanswered_positive : c.unanswered_negative);
        break;
    }
  }
  return c;
}

double auc_of(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_columns(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  std::size_t n_pos = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1..j share their midrank.
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        positive_rank_sum += midrank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw UndefinedMetricError("AUC needs both positive and negative labels");
  const double np = static_cast<double>(n_pos);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

double c_at_1_of(const Confusion& c) {
  if (c.total() == 0) throw UndefinedMetricError("c@1 of an empty prediction set");
  const double n = static_cast<double>(c.total());
  const double correct = static_cast<double>(c.tp + c.tn);
  const double unanswered = static_cast<double>(c.unanswered());
  return (correct + unanswered * correct / n) / n;
}

double f05u_of(const Confusion& c) {
  const double tp = static_cast<double>(c.tp);
  const double denom = 1.25 * tp + 0.25 * static_cast<double>(c.fn + c.unanswered()) + static_cast<double>(c.fp);
  if (!(denom > 0.0)) throw UndefinedMetricError("F0.5u has a zero denominator");
  return 1.25 * tp / denom;
}

F1Result f1_of(const Confusion& c) {
  if (c.total() == 0) throw UndefinedMetricError("F1 of an empty prediction set");
  const std::size_t denom = 2 * c.tp + c.fp + c.fn + c.unanswered_positive;
  if (denom == 0) return {0.0, true};
  return {2.0 * static_cast<double>(c.tp) / static_cast<double>(denom), false};
}

}  // namespace

Confusion confusion(const PredictionSet& preds) {
  const Columns c = columns(preds);
  return confusion_of(c.scores, c.labels);
}

double auc(const PredictionSet& preds) {
  const Columns c = columns(preds);
  return auc_of(c.scores, c.labels);
}

double c_at_1(const PredictionSet& preds) { return c_at_1_of(confusion(preds)); }

double f05u(const PredictionSet& preds) { return f05u_of(confusion(preds)); }

F1Result f1(const PredictionSet& preds) { return f1_of(confusion(preds)); }

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kAuc:
      return "auc";
    case Metric::kC1:
      return "c@1";
    case Metric::kF05u:
      return "f05u";
    case Metric::kF1:
      return "f1";
    case Metric::kOverall:
      return "overall";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (to_string(m) == name) return m;
  }
  if (name == "c1" || name == "c_at_1") return Metric::kC1;
  throw LookupError("unknown metric \"" + std::string(name) + "\"");
}

double MetricReport::get(Metric metric) const {
  switch (metric) {
    case Metric::kAuc:
      return auc;
    case Metric::kC1:
      return c1;
    case Metric::kF05u:
      return f05u;
    case Metric::kF1:
      return f1;
    case Metric::kOverall:
      return overall;
  }
  throw LookupError("unknown metric");
}

MetricReport report(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  const Confusion c = confusion_of(scores, labels);
  MetricReport r;
  r.auc = auc_of(scores, labels);
  r.c1 = c_at_1_of(c);
  r.f05u = f05u_of(c);
  const F1Result f = f1_of(c);
  r.f1 = f.value;
  r.f1_degenerate = f.degenerate;
  r.overall = (r.auc + r.c1 + r.f05u + r.f1) / 4.0;
  return r;
}

MetricReport report(const PredictionSet& preds) {
  const Columns c = columns(preds);
  return report(c.scores, c.labels);
}

io::Json metric_report_to_json(const MetricReport& r) {
  return {{"auc", r.auc}, {"c@1", r.c1}, {"f05u", r.f05u}, {"f1", r.f1}, {"overall", r.overall},
          {"f1_degenerate", r.f1_degenerate}};
}

MetricReport metric_report_from_json(const io::Json& doc) {
  try {
    MetricReport r;
    r.auc = doc.at("auc").get<double>();
    r.c1 = doc.at("c@1").get<double>();
    r.f05u = doc.at("f05u").get<double>();
    r.f1 = doc.at("f1").get<double>();
    r.overall = doc.at("overall").get<double>();
    r.f1_degenerate = doc.value("f1_degenerate", false);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed metric report: ") + e.what());
  }
}

namespace {

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string metric_header(std::string_view label_title) {
  return pad_right(std::string(label_title), 24) + "  AUC    c@1    F0.5u  F1     Overall";
}

std::string metric_row(std::string_view label, const MetricReport& r) {
  return pad_right(std::string(label), 24) + "  " + fixed3(r.auc) + "  " + fixed3(r.c1) + "  " + fixed3(r.f05u) +
         "  " + fixed3(r.f1) + "  " + fixed3(r.overall);
}

}  // namespace hits
