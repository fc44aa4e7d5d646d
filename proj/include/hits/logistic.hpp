#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hits/io.hpp"

namespace hits {

// Binary logistic regression with an intercept. Features are standardized
// with the training mean and standard deviation; the L2 penalty applies to
// the non-intercept weights in standardized units, which keeps the optimum
// finite on separable data.
class LogisticProblem {
 public:
  LogisticProblem(std::vector<std::vector<double>> features, std::vector<std::uint8_t> labels, double l2);

  std::size_t dimension() const noexcept { return mean_.size() + 1; }
  const std::vector<double>& feature_mean() const noexcept { return mean_; }
  const std::vector<double>& feature_scale() const noexcept { return scale_; }

  // Mean log-loss plus (l2 / 2) * |w[1:]|^2 at weights w (w[0] intercept).
  double objective(std::span<const double> w) const;
  std::vector<double> gradient(std::span<const double> w) const;
  std::vector<double> hessian(std::span<const double> w) const;  // row-major

 private:
  std::vector<std::vector<double>> z_;  // standardized rows
  std::vector<std::uint8_t> y_;
  std::vector<double> mean_;
  std::vector<double> scale_;
  double l2_;
};

struct LogisticModel {
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  std::vector<double> weights;  // intercept first, standardized units

  double predict(std::span<const double> features) const;

  io::Json to_json() const;
  static LogisticModel from_json(const io::Json& doc);
};

struct LogisticOptions {
  double l2 = 1e-4;
  double tolerance = 1e-8;
  std::size_t max_iterations = 200;
};

struct LogisticFit {
  LogisticModel model;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
};

// Damped Newton iterations until the gradient norm is <= tolerance.
// Throws TrainingError on single-class labels or non-convergence.
LogisticFit fit_logistic(const std::vector<std::vector<double>>& features, std::span<const std::uint8_t> labels,
                         const LogisticOptions& options = {});

}  // namespace hits
