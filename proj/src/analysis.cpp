#include "hits/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include <boost/math/distributions/students_t.hpp>

#include "hits/error.hpp"

namespace hits {

namespace {

constexpr std::string_view kMetricTitles[] = {"AUC", "c@1", "F0.5u", "F1", "Overall"};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> model_ids(const FoldReports& fold) {
  std::vector<std::string> ids;
  for (const auto& [id, _] : fold) ids.push_back(id);
  return ids;
}

std::set<std::string> model_union(std::span<const SetupResults> setups) {
  std::set<std::string> out;
  for (const auto& s : setups) {
    for (const auto& f : s.folds) {
      for (const auto& [id, _] : f) out.insert(id);
    }
  }
  return out;
}

std::vector<double> metric_values(std::span<const SetupResults> setups, bool hits, const std::string& model,
                                  Metric metric) {
  std::vector<double> out;
  for (const auto& s : setups) {
    if (s.is_hits != hits) continue;
    for (const auto& f : s.folds) {
      if (auto it = f.find(model); it != f.end()) out.push_back(it->second.get(metric));
    }
  }
  return out;
}

std::optional<WelchResult> try_welch(std::span<const double> a, std::span<const double> b) {
  try {
    return welch_t_test(a, b);
  } catch (const UndefinedMetricError&) {
    return std::nullopt;
  }
}

void mark_best(std::vector<std::vector<TableCell>>& rows, std::size_t first, std::size_t last, std::size_t col,
               bool lowest) {
  std::optional<double> best;
  for (std::size_t r = first; r < last; ++r) {
    const auto& v = rows[r][col].value;
    if (!v) continue;
    if (!best || (lowest ? *v < *best : *v > *best)) best = *v;
  }
  if (!best) return;
  for (std::size_t r = first; r < last; ++r) {
    if (rows[r][col].value && *rows[r][col].value == *best) rows[r][col].best = true;
  }
}

}  // namespace

RankMap rank_scores(const ModelScores& scores) {
  std::vector<std::pair<std::string, double>> order(scores.begin(), scores.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  RankMap ranks;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && order[j + 1].second == order[i].second) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k].first] = r;
    i = j + 1;
  }
  return ranks;
}

RankMap rank_models(const FoldReports& fold, Metric metric) {
  if (fold.size() < 2) throw ComputationError("ranking needs at least two models");
  ModelScores scores;
  for (const auto& [id, r] : fold) scores[id] = r.get(metric);
  return rank_scores(scores);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ComputationError("rank vectors differ in length");
  if (a.size() < 2) throw ComputationError("rank correlation needs at least two entries");
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw UndefinedMetricError("rank correlation undefined for a constant ranking");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double spearman(const RankMap& a, const RankMap& b) {
  if (a.size() != b.size()) throw ComputationError("rankings cover different model sets");
  std::vector<double> va;
  std::vector<double> vb;
  for (const auto& [id, r] : a) {
    auto it = b.find(id);
    if (it == b.end()) throw ComputationError("rankings cover different model sets");
    va.push_back(r);
    vb.push_back(it->second);
  }
  return spearman(va, vb);
}

const MetricStability& StabilityReport::at(Metric metric) const {
  for (const auto& m : per_metric) {
    if (m.metric == metric) return m;
  }
  throw LookupError("stability report lacks metric " + std::string(to_string(metric)));
}

StabilityReport stability(std::span<const FoldReports> folds, std::span<const Metric> metrics) {
  if (folds.size() < 2) throw ConfigError("ranking stability needs at least two folds");
  if (metrics.empty()) throw ConfigError("ranking stability needs at least one metric");
  const auto ids = model_ids(folds.front());
  for (const auto& f : folds) {
    if (model_ids(f) != ids) throw ComputationError("folds cover different model sets");
  }
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  StabilityReport out;
  std::vector<double> defined_means;
  for (Metric metric : metrics) {
    std::vector<RankMap> ranks;
    for (const auto& f : folds) ranks.push_back(rank_models(f, metric));
    MetricStability ms;
    ms.metric = metric;
    const std::size_t k = folds.size();
    ms.matrix.assign(k, std::vector<double>(k, 1.0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        double rho = kNaN;
        try {
          rho = spearman(ranks[i], ranks[j]);
          ms.pairwise.push_back(rho);
        } catch (const UndefinedMetricError&) {
          // A fold where every model ties has no ranking to correlate.
          ++ms.undefined_pairs;
        }
        ms.matrix[i][j] = ms.matrix[j][i] = rho;
      }
    }
    ms.mean_correlation = ms.pairwise.empty() ? kNaN : mean(ms.pairwise);
    if (!ms.pairwise.empty()) defined_means.push_back(ms.mean_correlation);
    out.per_metric.push_back(std::move(ms));
  }
  out.grand_average = defined_means.empty() ? kNaN : mean(defined_means);
  return out;
}

StabilityReport stability(std::span<const FoldReports> folds) { return stability(folds, kAllMetrics); }

ShortcutReport shortcut_test(const ModelScores& hits_scores, const ModelScores& random_scores) {
  if (hits_scores.empty()) throw ComputationError("shortcut test needs at least one model");
  if (hits_scores.size() != random_scores.size()) throw ComputationError("shortcut test model sets differ");
  ShortcutReport report;
  for (const auto& [model, h] : hits_scores) {
    auto it = random_scores.find(model);
    if (it == random_scores.end()) throw ComputationError("model " + model + " missing from the random scores");
    const double r = it->second;
    report.entries.push_back({model, r, h, 0.5 * (r + h), std::abs(r - h), 0});
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const auto& a, const auto& b) { return a.diff < b.diff; });
  for (std::size_t i = 0; i < report.entries.size(); ++i) report.entries[i].robustness_rank = i + 1;
  return report;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ComputationError("mean of an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw UndefinedMetricError("t-test needs at least two values per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = std::pow(stddev(a), 2) / na;
  const double vb = std::pow(stddev(b), 2) / nb;
  const double se2 = va + vb;
  if (!(se2 > 0.0)) throw UndefinedMetricError("t-test undefined: both samples have zero variance");
  WelchResult r;
  r.t = (mean(a) - mean(b)) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  const boost::math::students_t dist(r.df);
  const double upper = boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.p_two_sided = std::min(1.0, 2.0 * upper);
  const double below = boost::math::cdf(dist, r.t);
  r.p_less = below;
  r.p_greater = boost::math::cdf(boost::math::complement(dist, r.t));
  return r;
}

std::vector<CrossPair> top_similar_cross_pairs(const EvaluationSplit& split,
                                               std::span<const TopicRepresentation> topics, std::size_t count) {
  std::vector<CrossPair> pairs;
  for (const auto& tr : split.train_topics) {
    const auto& vt = find_topic(topics, tr).vector;
    for (const auto& te : split.test_topics) pairs.push_back({tr, te, cosine(vt, find_topic(topics, te).vector)});
  }
  std::sort(pairs.begin(), pairs.end(), [](const CrossPair& a, const CrossPair& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    if (a.train_topic != b.train_topic) return a.train_topic < b.train_topic;
    return a.test_topic < b.test_topic;
  });
  if (pairs.size() > count) pairs.resize(count);
  return pairs;
}

io::Json table_to_json(const Table& table) {
  io::Json doc;
  doc["format"] = kTableFormat;
  doc["version"] = kTableVersion;
  doc["table"] = table.name;
  doc["caption"] = table.caption;
  doc["columns"] = table.columns;
  io::Json rows = io::Json::array();
  for (const auto& row : table.rows) {
    io::Json cells = io::Json::array();
    for (const auto& c : row) {
      if (!c.value) {
        cells.push_back(c.text);
        continue;
      }
      io::Json cell;
      cell["value"] = *c.value;
      if (c.spread) cell["spread"] = *c.spread;
      if (c.marked) cell["significant"] = true;
      if (c.best) cell["best"] = true;
      cells.push_back(std::move(cell));
    }
    rows.push_back(std::move(cells));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string render_table(const Table& table) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back(table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (const auto& c : row) {
      if (!c.value) {
        line.push_back(c.text);
        continue;
      }
      std::string s = fixed(*c.value, table.digits);
      if (c.spread) s += " +-" + fixed(*c.spread, table.digits);
      if (c.best) s += "^";
      if (c.marked) s += "*";
      line.push_back(std::move(s));
    }
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width;
  for (const auto& line : grid) {
    if (width.size() < line.size()) width.resize(line.size(), 0);
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  if (!table.caption.empty()) out += table.caption + "\n";
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      if (i) line += "  ";
      line += grid[r][i];
      if (i + 1 < grid[r].size()) line.append(width[i] - grid[r][i].size(), ' ');
    }
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    }
  }
  return out;
}

Table main_results_table(std::span<const SetupResults> setups, double alpha) {
  Table t;
  t.name = "mainresults";
  t.caption = "Scores per model, mean +- std over folds. ^ best in setup; * HITS significantly below Random.";
  t.columns = {"Subsampling", "Method"};
  for (auto title : kMetricTitles) t.columns.emplace_back(title);
  const auto models = model_union(setups);
  for (bool hits : {true, false}) {
    const std::size_t first = t.rows.size();
    for (const auto& model : models) {
      std::vector<TableCell> row{TableCell::label(hits ? "HITS" : "Random"), TableCell::label(model)};
      bool any = false;
      for (Metric m : kAllMetrics) {
        const auto vals = metric_values(setups, hits, model, m);
        if (vals.empty()) {
          row.push_back(TableCell::label("-"));
          continue;
        }
        any = true;
        TableCell cell = TableCell::number(mean(vals), stddev(vals));
        if (hits) {
          const auto other = metric_values(setups, false, model, m);
          if (auto w = try_welch(vals, other); w && w->p_less < alpha) cell.marked = true;
        }
        row.push_back(std::move(cell));
      }
      if (any) t.rows.push_back(std::move(row));
    }
    for (std::size_t c = 2; c < t.columns.size(); ++c) mark_best(t.rows, first, t.rows.size(), c, false);
  }
  return t;
}

Table ranking_stability_table(std::span<const SetupResults> setups, double alpha) {
  Table t;
  t.name = "rankingstabmain";
  t.caption = "Mean pairwise Spearman correlation of model rankings across folds. * significantly below HITS.";
  t.digits = 2;
  t.columns = {"Dataset"};
  for (auto title : kMetricTitles) t.columns.emplace_back(title);
  t.columns.emplace_back("Average");

  std::vector<StabilityReport> reports;
  for (const auto& s : setups) reports.push_back(stability(s.folds));

  std::vector<std::vector<double>> hits_pairwise(std::size(kAllMetrics));
  for (std::size_t i = 0; i < setups.size(); ++i) {
    if (!setups[i].is_hits) continue;
    for (std::size_t m = 0; m < std::size(kAllMetrics); ++m) {
      const auto& pw = reports[i].per_metric[m].pairwise;
      hits_pairwise[m].insert(hits_pairwise[m].end(), pw.begin(), pw.end());
    }
  }

  auto row_for = [&](std::size_t i) {
    std::vector<TableCell> row{TableCell::label(setups[i].name)};
    for (std::size_t m = 0; m < std::size(kAllMetrics); ++m) {
      const auto& ms = reports[i].per_metric[m];
      TableCell cell = std::isnan(ms.mean_correlation) ? TableCell::label("-") : TableCell::number(ms.mean_correlation);
      if (!setups[i].is_hits && !hits_pairwise[m].empty()) {
        if (auto w = try_welch(ms.pairwise, hits_pairwise[m]); w && w->p_less < alpha) cell.marked = true;
      }
      row.push_back(std::move(cell));
    }
    row.push_back(std::isnan(reports[i].grand_average) ? TableCell::label("-")
                                                       : TableCell::number(reports[i].grand_average));
    return row;
  };

  for (std::size_t i = 0; i < setups.size(); ++i) {
    if (setups[i].is_hits) t.rows.push_back(row_for(i));
  }
  std::vector<std::size_t> random_idx;
  for (std::size_t i = 0; i < setups.size(); ++i) {
    if (!setups[i].is_hits) random_idx.push_back(i);
  }
  if (!random_idx.empty()) {
    std::vector<TableCell> avg{TableCell::label("R_avg")};
    for (std::size_t m = 0; m <= std::size(kAllMetrics); ++m) {
      std::vector<double> vals;
      for (auto i : random_idx) {
        const double v =
            m < std::size(kAllMetrics) ? reports[i].per_metric[m].mean_correlation : reports[i].grand_average;
        if (!std::isnan(v)) vals.push_back(v);
      }
      avg.push_back(vals.empty() ? TableCell::label("-") : TableCell::number(mean(vals)));
    }
    t.rows.push_back(std::move(avg));
    for (auto i : random_idx) t.rows.push_back(row_for(i));
  }
  for (std::size_t c = 1; c < t.columns.size(); ++c) mark_best(t.rows, 0, t.rows.size(), c, false);
  return t;
}

Table ranking_analysis_table(std::span<const SetupResults> setups) {
  Table t;
  t.name = "rankinganal";
  t.caption = "Overall-metric rank of each model (lower is better), mean +- std over folds.";
  t.digits = 1;
  t.columns = {"Dataset"};
  const auto models = model_union(setups);
  for (const auto& m : models) t.columns.push_back(m);

  auto ranks_of = [&](std::span<const SetupResults> group) {
    std::map<std::string, std::vector<double>> ranks;
    for (const auto& s : group) {
      for (const auto& f : s.folds) {
        for (const auto& [id, r] : rank_models(f, Metric::kOverall)) ranks[id].push_back(r);
      }
    }
    return ranks;
  };
  auto add_row = [&](const std::string& label, std::span<const SetupResults> group) {
    const auto ranks = ranks_of(group);
    std::vector<TableCell> row{TableCell::label(label)};
    for (const auto& m : models) {
      auto it = ranks.find(m);
      if (it == ranks.end()) {
        row.push_back(TableCell::label("-"));
      } else {
        row.push_back(TableCell::number(mean(it->second), stddev(it->second)));
      }
    }
    t.rows.push_back(std::move(row));
    // Best is the lowest rank within the row.
    auto& r = t.rows.back();
    std::optional<double> best;
    for (std::size_t c = 1; c < r.size(); ++c) {
      if (r[c].value && (!best || *r[c].value < *best)) best = *r[c].value;
    }
    for (std::size_t c = 1; c < r.size(); ++c) {
      if (r[c].value && best && *r[c].value == *best) r[c].best = true;
    }
  };

  std::vector<SetupResults> random;
  for (const auto& s : setups) {
    if (s.is_hits) add_row(s.name, std::span<const SetupResults>(&s, 1));
  }
  for (const auto& s : setups) {
    if (!s.is_hits) random.push_back(s);
  }
  if (!random.empty()) {
    add_row("R_avg", random);
    for (const auto& s : random) add_row(s.name, std::span<const SetupResults>(&s, 1));
  }
  return t;
}

Table topic_similarity_table(std::span<const TopicSimilarityRow> rows) {
  Table t;
  t.name = "numtopicsim";
  t.caption = "Mean and max train-test topic cosine similarity, averaged over folds.";
  t.columns = {"Topics", "Random mean", "HITS mean", "Random max", "HITS max"};
  for (const auto& r : rows) {
    t.rows.push_back({TableCell::label(std::to_string(r.topic_count)), TableCell::number(r.random_mean),
                      TableCell::number(r.hits_mean), TableCell::number(r.random_max), TableCell::number(r.hits_max)});
  }
  return t;
}

Table topic_examples_table(std::span<const CrossPair> hits_pairs, std::span<const CrossPair> random_pairs) {
  Table t;
  t.name = "topicexamples";
  t.caption = "Most similar train-test topic pairs.";
  t.columns = {"Setup", "Train Topic", "Test Topic", "Sim"};
  for (const auto& p : hits_pairs) {
    t.rows.push_back({TableCell::label("HITS"), TableCell::label(p.train_topic), TableCell::label(p.test_topic),
                      TableCell::number(p.sim)});
  }
  for (const auto& p : random_pairs) {
    t.rows.push_back({TableCell::label("Random"), TableCell::label(p.train_topic), TableCell::label(p.test_topic),
                      TableCell::number(p.sim)});
  }
  return t;
}

Table shortcut_table(const ShortcutReport& report) {
  Table t;
  t.name = "uncover";
  t.caption = "Topic shortcut test: mean score per setup, their average, and absolute difference (lower is more robust).";
  t.digits = 2;
  t.columns = {"Model", "Random", "HITS", "Avg.", "Diff", "Rank"};
  for (const auto& e : report.entries) {
    t.rows.push_back({TableCell::label(e.model), TableCell::number(e.score_random), TableCell::number(e.score_hits),
                      TableCell::number(e.avg), TableCell::number(e.diff),
                      TableCell::label(std::to_string(e.robustness_rank))});
  }
  mark_best(t.rows, 0, t.rows.size(), 1, false);
  mark_best(t.rows, 0, t.rows.size(), 2, false);
  mark_best(t.rows, 0, t.rows.size(), 3, false);
  mark_best(t.rows, 0, t.rows.size(), 4, true);
  return t;
}

}  // namespace hits
