#pragma once

#include <cstdint>
#include <span>

namespace hits {

// Non-answer band for similarity scores, in normalized [0, 1] units.
struct CalibrationParams {
  double p1 = 0.5;
  double p2 = 0.5;

  friend bool operator==(const CalibrationParams&, const CalibrationParams&) = default;
};

// Range of raw scores observed on calibration data. Raw scores are
// min-max normalized into [0, 1] against it, clamping outliers.
struct ScoreRange {
  double lo = 0.0;
  double hi = 1.0;

  double normalize(double raw) const noexcept;

  friend bool operator==(const ScoreRange&, const ScoreRange&) = default;
};

// Two-threshold calibration of a normalized score x in [0, 1]:
//   x <= p1      -> linear from [0, p1] onto [0, 0.49]
//   p1 < x < p2  -> 0.5 (non-answer)
//   x >= p2      -> linear from [p2, 1] onto [0.51, 1]
// With p1 == p2 == t only x == t maps to 0.5. Requires 0 <= p1 <= p2 <= 1.
double calibrate(double x, const CalibrationParams& params);

inline double calibrate(double raw, const CalibrationParams& params, const ScoreRange& range) {
  return calibrate(range.normalize(raw), params);
}

struct CalibrationFit {
  CalibrationParams params;
  ScoreRange range;
  double overall = 0.0;
};

inline constexpr int kCalibrationGridSteps = 100;

// Exhaustive search over p1 <= p2 on the grid {0, 0.01, ..., 1} maximizing
// Overall of the calibrated validation predictions. Ties prefer the
// narrower band, then the smaller p1. Throws TrainingError when the
// validation set is empty or single-class.
CalibrationFit grid_search_calibration(std::span<const std::uint8_t> labels, std::span<const double> raw_scores);

}  // namespace hits
