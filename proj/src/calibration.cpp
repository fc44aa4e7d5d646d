#include "hits/calibration.hpp"

#include <algorithm>
#include <vector>

#include "hits/error.hpp"
#include "hits/metrics.hpp"

namespace hits {

double ScoreRange::normalize(double raw) const noexcept {
  if (!(hi > lo)) return 0.5;
  return std::clamp((raw - lo) / (hi - lo), 0.0, 1.0);
}

double calibrate(double x, const CalibrationParams& params) {
  const double p1 = params.p1;
  const double p2 = params.p2;
  x = std::clamp(x, 0.0, 1.0);
  if (p1 == p2 && x == p1) return 0.5;
  if (x <= p1) return p1 > 0.0 ? 0.49 * (x / p1) : 0.49;
  if (x >= p2) return p2 < 1.0 ? 0.51 + 0.49 * ((x - p2) / (1.0 - p2)) : 0.51;
  return 0.5;
}

CalibrationFit grid_search_calibration(std::span<const std::uint8_t> labels, std::span<const double> raw_scores) {
  if (labels.empty()) throw TrainingError("calibration needs validation pairs");
  if (labels.size() != raw_scores.size()) throw ComputationError("calibration labels and scores differ in length");
  const bool has_pos = std::any_of(labels.begin(), labels.end(), [](auto l) { return l != 0; });
  const bool has_neg = std::any_of(labels.begin(), labels.end(), [](auto l) { return l == 0; });
  if (!has_pos || !has_neg) throw TrainingError("calibration needs both same-author and different-author pairs");

  CalibrationFit best;
  const auto [lo, hi] = std::minmax_element(raw_scores.begin(), raw_scores.end());
  best.range = {*lo, *hi};

  std::vector<double> normalized(raw_scores.size());
  for (std::size_t i = 0; i < raw_scores.size(); ++i) normalized[i] = best.range.normalize(raw_scores[i]);

  std::vector<double> calibrated(normalized.size());
  bool have = false;
  constexpr int kSteps = kCalibrationGridSteps;
  for (int width = 0; width <= kSteps; ++width) {
    for (int i = 0; i + width <= kSteps; ++i) {
      const CalibrationParams params{static_cast<double>(i) / kSteps, static_cast<double>(i + width) / kSteps};
      for (std::size_t k = 0; k < normalized.size(); ++k) calibrated[k] = calibrate(normalized[k], params);
      const double overall = report(calibrated, labels).overall;
      // Enumeration runs by width, then p1, so only a strictly better
      // score replaces the incumbent.
      if (!have || overall > best.overall) {
        best.overall = overall;
        best.params = params;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace hits
