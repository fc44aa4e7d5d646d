#include <gtest/gtest.h>

#include <cmath>

#include "hits/error.hpp"
#include "hits/logistic.hpp"
#include "hits/rng.hpp"

namespace hits {
namespace {

struct Data {
  std::vector<std::vector<double>> x;
  std::vector<std::uint8_t> y;
};

Data noisy(Rng& rng, std::size_t n) {
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    const bool label = rng.uniform() < 0.4;
    d.x.push_back({rng.normal() + (label ? 1.0 : 0.0), 3.0 * rng.normal() - (label ? 2.0 : 0.0) + 10.0});
    d.y.push_back(label);
  }
  return d;
}

double relative_error(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12}); }

TEST(Logistic, SeparableDataFitsPerfectly) {
  Data d;
  for (int i = 0; i < 40; ++i) {
    d.x.push_back({static_cast<double>(i), static_cast<double>(i % 3)});
    d.y.push_back(i >= 20);
  }
  const auto fit = fit_logistic(d.x, d.y);
  for (std::size_t i = 0; i < d.x.size(); ++i) EXPECT_EQ(fit.model.predict(d.x[i]) > 0.5, d.y[i] == 1) << i;
}

TEST(Logistic, UninformativeFeaturesGivePrior) {
  Data d;
  for (int i = 0; i < 100; ++i) {
    d.x.push_back({1.5, -2.0});
    d.y.push_back(i < 30);
  }
  const auto fit = fit_logistic(d.x, d.y);
  EXPECT_NEAR(fit.model.predict(d.x[0]), 0.3, 0.01);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  Rng rng(3);
  const Data d = noisy(rng, 200);
  const LogisticProblem problem(d.x, d.y, 1e-4);
  const double h = 1e-5;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> w = {rng.normal(), rng.normal(), rng.normal()};
    const auto g = problem.gradient(w);
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto up = w, down = w;
      up[k] += h;
      down[k] -= h;
      const double fd = (problem.objective(up) - problem.objective(down)) / (2 * h);
      EXPECT_LE(relative_error(g[k], fd), 1e-3) << k;
    }
    const auto hess = problem.hessian(w);
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto up = w, down = w;
      up[k] += h;
      down[k] -= h;
      const auto gu = problem.gradient(up);
      const auto gd = problem.gradient(down);
      for (std::size_t j = 0; j < w.size(); ++j) {
        EXPECT_LE(relative_error(hess[j * w.size() + k], (gu[j] - gd[j]) / (2 * h)), 1e-3);
      }
    }
  }
}

TEST(Logistic, OptimumHasVanishingGradient) {
  Rng rng(4);
  const Data d = noisy(rng, 300);
  const auto fit = fit_logistic(d.x, d.y);
  EXPECT_LE(fit.gradient_norm, 1e-8);
  const LogisticProblem problem(d.x, d.y, 1e-4);
  const double h = 1e-5;
  double fd_norm = 0;
  for (std::size_t k = 0; k < fit.model.weights.size(); ++k) {
    auto up = fit.model.weights, down = fit.model.weights;
    up[k] += h;
    down[k] -= h;
    const double fd = (problem.objective(up) - problem.objective(down)) / (2 * h);
    fd_norm += fd * fd;
  }
  EXPECT_LE(std::sqrt(fd_norm), 1e-6);
}

TEST(Logistic, JsonRoundTrip) {
  Rng rng(5);
  const Data d = noisy(rng, 50);
  const auto m = fit_logistic(d.x, d.y).model;
  const auto back = LogisticModel::from_json(m.to_json());
  for (const auto& row : d.x) EXPECT_EQ(back.predict(row), m.predict(row));
}

TEST(Logistic, RejectsSingleClass) {
  const std::vector<std::vector<double>> x = {{1.0}, {2.0}};
  EXPECT_THROW(fit_logistic(x, std::vector<std::uint8_t>{1, 1}), TrainingError);
}

}  // namespace
}  // namespace hits
