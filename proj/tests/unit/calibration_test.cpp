#include <gtest/gtest.h>

#include "hits/calibration.hpp"
#include "hits/error.hpp"
#include "hits/metrics.hpp"
#include "hits/rng.hpp"

namespace hits {
namespace {

TEST(Calibrate, BandEdgesAndInterior) {
  const CalibrationParams p{0.3, 0.7};
  EXPECT_DOUBLE_EQ(calibrate(0.3, p), 0.49);
  EXPECT_DOUBLE_EQ(calibrate(0.7, p), 0.51);
  EXPECT_EQ(calibrate(0.5, p), 0.5);
  EXPECT_EQ(calibrate(0.31, p), 0.5);
  EXPECT_EQ(calibrate(0.0, p), 0.0);
  EXPECT_EQ(calibrate(1.0, p), 1.0);
}

TEST(Calibrate, CollapsedBand) {
  const CalibrationParams p{0.4, 0.4};
  EXPECT_LT(calibrate(0.39, p), 0.5);
  EXPECT_GT(calibrate(0.41, p), 0.5);
  EXPECT_EQ(calibrate(0.4, p), 0.5);
}

TEST(Calibrate, MonotoneOnRandomTriples) {
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    double p1 = rng.uniform(), p2 = rng.uniform();
    if (p1 > p2) std::swap(p1, p2);
    double prev = -1;
    for (int i = 0; i <= 200; ++i) {
      const double v = calibrate(i / 200.0, {p1, p2});
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(ScoreRange, Normalizes) {
  const ScoreRange r{2.0, 4.0};
  EXPECT_EQ(r.normalize(3.0), 0.5);
  EXPECT_EQ(r.normalize(10.0), 1.0);
  EXPECT_EQ(r.normalize(-1.0), 0.0);
  EXPECT_EQ((ScoreRange{1.0, 1.0}).normalize(1.0), 0.5);
}

TEST(GridSearch, SeparableReachesOne) {
  const std::vector<std::uint8_t> labels = {0, 0, 0, 1, 1, 1};
  const std::vector<double> raw = {0.1, 0.2, 0.25, 0.6, 0.8, 0.9};
  const auto fit = grid_search_calibration(labels, raw);
  EXPECT_EQ(fit.overall, 1.0);
  const double gap_lo = (0.25 - 0.1) / 0.8, gap_hi = (0.6 - 0.1) / 0.8;
  EXPECT_GE(fit.params.p1, gap_lo);
  EXPECT_LT(fit.params.p2, gap_hi);
}

// Identical raws all normalize to 0.5. A band containing 0.5 turns every
// prediction into a non-answer (Overall 0.125); answering everything
// positive scores higher, and the narrowest such band with the smallest p1
// is p1 = p2 = 0.
TEST(GridSearch, IdenticalRaws) {
  const std::vector<std::uint8_t> labels = {0, 1, 0, 1};
  const std::vector<double> raw = {0.3, 0.3, 0.3, 0.3};
  const auto fit = grid_search_calibration(labels, raw);
  EXPECT_EQ(fit.params, (CalibrationParams{0.0, 0.0}));
  std::vector<double> band(4, 0.5);
  EXPECT_DOUBLE_EQ(report(band, labels).overall, 0.125);
  EXPECT_GT(fit.overall, 0.125);
}

TEST(GridSearch, BeatsExhaustiveRescan) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::uint8_t> labels;
    std::vector<double> raw;
    for (int i = 0; i < 40; ++i) {
      labels.push_back(rng.uniform() < 0.5);
      raw.push_back(rng.normal() + (labels.back() ? 0.8 : 0.0));
    }
    labels[0] = 1;
    labels[1] = 0;
    const auto fit = grid_search_calibration(labels, raw);
    double best = -1;
    for (int i = 0; i <= 100; ++i) {
      for (int j = i; j <= 100; ++j) {
        std::vector<double> cal;
        for (double r : raw) cal.push_back(calibrate(fit.range.normalize(r), {i / 100.0, j / 100.0}));
        best = std::max(best, report(cal, labels).overall);
      }
    }
    EXPECT_GE(fit.overall, best - 1e-15);
    std::vector<double> cal;
    for (double r : raw) cal.push_back(calibrate(r, fit.params, fit.range));
    EXPECT_DOUBLE_EQ(report(cal, labels).overall, fit.overall);
  }
}

TEST(GridSearch, RejectsSingleClass) {
  EXPECT_THROW(grid_search_calibration(std::vector<std::uint8_t>{1, 1}, std::vector<double>{0.1, 0.2}),
               TrainingError);
  EXPECT_THROW(grid_search_calibration(std::vector<std::uint8_t>{}, std::vector<double>{}), TrainingError);
}

}  // namespace
}  // namespace hits
