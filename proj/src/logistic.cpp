#include "hits/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "hits/error.hpp"

namespace hits {

namespace {

double log1p_exp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot_with_intercept(std::span<const double> w, std::span<const double> z) {
  double s = w[0];
  for (std::size_t k = 0; k < z.size(); ++k) s += w[k + 1] * z[k];
  return s;
}

// Solves H x = g for a small symmetric positive definite H (Cholesky).
std::vector<double> solve_spd(std::vector<double> h, std::vector<double> g) {
  const std::size_t n = g.size();
  for (std::size_t j = 0; j < n; ++j) {
    double d = h[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= h[j * n + k] * h[j * n + k];
    if (!(d > 0.0)) throw TrainingError("logistic Hessian is not positive definite");
    const double l = std::sqrt(d);
    h[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = h[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= h[i * n + k] * h[j * n + k];
      h[i * n + j] = s / l;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = g[i];
    for (std::size_t k = 0; k < i; ++k) s -= h[i * n + k] * g[k];
    g[i] = s / h[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = g[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= h[k * n + i] * g[k];
    g[i] = s / h[i * n + i];
  }
  return g;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

LogisticProblem::LogisticProblem(std::vector<std::vector<double>> features, std::vector<std::uint8_t> labels, double l2)
    : z_(std::move(features)), y_(std::move(labels)), l2_(l2) {
  if (z_.empty()) throw TrainingError("logistic regression needs training rows");
  if (z_.size() != y_.size()) throw ComputationError("feature and label counts differ");
  const std::size_t d = z_.front().size();
  mean_.assign(d, 0.0);
  scale_.assign(d, 0.0);
  for (const auto& row : z_) {
    if (row.size() != d) throw ComputationError("ragged feature rows");
    for (std::size_t k = 0; k < d; ++k) {
      if (!std::isfinite(row[k])) throw TrainingError("non-finite feature value");
      mean_[k] += row[k];
    }
  }
  const double n = static_cast<double>(z_.size());
  for (auto& m : mean_) m /= n;
  for (const auto& row : z_) {
    for (std::size_t k = 0; k < d; ++k) scale_[k] += (row[k] - mean_[k]) * (row[k] - mean_[k]);
  }
  for (auto& s : scale_) {
    s = std::sqrt(s / n);
    if (!(s > 1e-12)) s = 1.0;
  }
  for (auto& row : z_) {
    for (std::size_t k = 0; k < d; ++k) row[k] = (row[k] - mean_[k]) / scale_[k];
  }
}

double LogisticProblem::objective(std::span<const double> w) const {
  double loss = 0.0;
  for (std::size_t i = 0; i < z_.size(); ++i) {
    const double s = dot_with_intercept(w, z_[i]);
    loss += log1p_exp(s) - (y_[i] ? s : 0.0);
  }
  loss /= static_cast<double>(z_.size());
  double penalty = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k) penalty += w[k] * w[k];
  return loss + 0.5 * l2_ * penalty;
}

std::vector<double> LogisticProblem::gradient(std::span<const double> w) const {
  std::vector<double> g(dimension(), 0.0);
  for (std::size_t i = 0; i < z_.size(); ++i) {
    const double r = sigmoid(dot_with_intercept(w, z_[i])) - (y_[i] ? 1.0 : 0.0);
    g[0] += r;
    for (std::size_t k = 0; k < z_[i].size(); ++k) g[k + 1] += r * z_[i][k];
  }
  const double n = static_cast<double>(z_.size());
  for (auto& x : g) x /= n;
  for (std::size_t k = 1; k < g.size(); ++k) g[k] += l2_ * w[k];
  return g;
}

std::vector<double> LogisticProblem::hessian(std::span<const double> w) const {
  const std::size_t d = dimension();
  std::vector<double> h(d * d, 0.0);
  std::vector<double> x(d);
  for (const auto& row : z_) {
    const double p = sigmoid(dot_with_intercept(w, row));
    const double s = p * (1.0 - p);
    x[0] = 1.0;
    std::copy(row.begin(), row.end(), x.begin() + 1);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) h[a * d + b] += s * x[a] * x[b];
    }
  }
  const double n = static_cast<double>(z_.size());
  for (auto& v : h) v /= n;
  for (std::size_t k = 1; k < d; ++k) h[k * d + k] += l2_;
  // Keeps the intercept direction invertible when every p saturates.
  h[0] += 1e-12;
  return h;
}

double LogisticModel::predict(std::span<const double> features) const {
  if (features.size() != feature_mean.size()) throw ComputationError("feature dimension mismatch");
  double s = weights[0];
  for (std::size_t k = 0; k < features.size(); ++k) {
    s += weights[k + 1] * (features[k] - feature_mean[k]) / feature_scale[k];
  }
  return sigmoid(s);
}

io::Json LogisticModel::to_json() const {
  return {{"feature_mean", feature_mean}, {"feature_scale", feature_scale}, {"weights", weights}};
}

LogisticModel LogisticModel::from_json(const io::Json& doc) {
  try {
    LogisticModel m;
    m.feature_mean = doc.at("feature_mean").get<std::vector<double>>();
    m.feature_scale = doc.at("feature_scale").get<std::vector<double>>();
    m.weights = doc.at("weights").get<std::vector<double>>();
    if (m.feature_scale.size() != m.feature_mean.size() || m.weights.size() != m.feature_mean.size() + 1) {
      throw DataError("logistic model has inconsistent shapes");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed logistic model: ") + e.what());
  }
}

LogisticFit fit_logistic(const std::vector<std::vector<double>>& features, std::span<const std::uint8_t> labels,
                         const LogisticOptions& options) {
  const bool has_pos = std::any_of(labels.begin(), labels.end(), [](auto l) { return l != 0; });
  const bool has_neg = std::any_of(labels.begin(), labels.end(), [](auto l) { return l == 0; });
  if (!has_pos || !has_neg) throw TrainingError("logistic regression needs both classes in the training labels");

  const LogisticProblem problem(features, {labels.begin(), labels.end()}, options.l2);
  std::vector<double> w(problem.dimension(), 0.0);
  double f = problem.objective(w);
  std::vector<double> g = problem.gradient(w);
  std::size_t it = 0;
  while (norm2(g) > options.tolerance) {
    if (it++ >= options.max_iterations) throw TrainingError("logistic regression did not converge");
    const std::vector<double> step = solve_spd(problem.hessian(w), g);
    double t = 1.0;
    std::vector<double> candidate(w.size());
    double fc = 0.0;
    double slope = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) slope += g[k] * step[k];
    while (true) {
      for (std::size_t k = 0; k < w.size(); ++k) candidate[k] = w[k] - t * step[k];
      fc = problem.objective(candidate);
      if (fc <= f - 1e-4 * t * slope || t < 1e-10) break;
      t *= 0.5;
    }
    w = candidate;
    f = fc;
    g = problem.gradient(w);
  }
  LogisticFit fit;
  fit.model = {problem.feature_mean(), problem.feature_scale(), w};
  fit.iterations = it;
  fit.gradient_norm = norm2(g);
  return fit;
}

}  // namespace hits
