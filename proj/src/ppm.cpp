#include "hits/ppm.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>

#include "hits/error.hpp"

namespace hits {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

}  // namespace

PpmModel::PpmModel(std::string_view context, int order) : order_(order) {
  if (order < 0) throw ConfigError("PPM order must be >= 0");
  if (context.empty()) throw ComputationError("PPM context text is empty");
  nodes_.emplace_back();
  nodes_.reserve(context.size() * static_cast<std::size_t>(order + 1) / 2 + 1);
  for (std::size_t i = 0; i < context.size(); ++i) {
    const auto symbol = static_cast<std::uint8_t>(context[i]);
    std::uint32_t node = 0;
    count(node, symbol);
    for (int o = 1; o <= order && static_cast<std::size_t>(o) <= i; ++o) {
      node = child_or_insert(node, static_cast<std::uint8_t>(context[i - static_cast<std::size_t>(o)]));
      count(node, symbol);
    }
  }
}

std::uint32_t PpmModel::child(std::uint32_t node, std::uint8_t byte) const {
  for (const auto& [b, idx] : nodes_[node].children) {
    if (b == byte) return idx;
  }
  return kNone;
}

std::uint32_t PpmModel::child_or_insert(std::uint32_t node, std::uint8_t byte) {
  if (auto c = child(node, byte); c != kNone) return c;
  const auto idx = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  nodes_[node].children.push_back({byte, idx});
  return idx;
}

void PpmModel::count(std::uint32_t node, std::uint8_t symbol) {
  auto& n = nodes_[node];
  ++n.total;
  for (auto& [s, c] : n.counts) {
    if (s == symbol) {
      ++c;
      return;
    }
  }
  n.counts.push_back({symbol, 1});
}

double PpmModel::cross_entropy(std::string_view target) const {
  if (target.empty()) throw ComputationError("PPM target text is empty");
  double bits = 0.0;
  std::vector<std::uint32_t> chain;
  chain.reserve(static_cast<std::size_t>(order_) + 1);
  for (std::size_t i = 0; i < target.size(); ++i) {
    const auto symbol = static_cast<std::uint8_t>(target[i]);
    chain.assign(1, 0);
    for (int o = 1; o <= order_ && static_cast<std::size_t>(o) <= i; ++o) {
      const std::uint32_t next = child(chain.back(), static_cast<std::uint8_t>(target[i - static_cast<std::size_t>(o)]));
      if (next == kNone) break;
      chain.push_back(next);
    }

    std::bitset<256> excluded;
    double log_p = 0.0;
    bool coded = false;
    for (auto it = chain.rbegin(); it != chain.rend() && !coded; ++it) {
      const Node& node = nodes_[*it];
      std::uint64_t total = 0;
      std::uint64_t distinct = 0;
      std::uint64_t hit = 0;
      for (const auto& [s, c] : node.counts) {
        if (excluded[s]) continue;
        total += c;
        ++distinct;
        if (s == symbol) hit = c;
      }
      if (distinct == 0) continue;
      const double denom = static_cast<double>(total + distinct);
      if (hit > 0) {
        log_p += std::log2(static_cast<double>(hit) / denom);
        coded = true;
      } else {
        log_p += std::log2(static_cast<double>(distinct) / denom);
        for (const auto& [s, c] : node.counts) excluded[s] = true;
      }
    }
    if (!coded) log_p -= std::log2(static_cast<double>(256 - excluded.count()));
    bits -= log_p;
  }
  return bits / static_cast<double>(target.size());
}

double ppm_cross_entropy(std::string_view context, std::string_view target, int order) {
  if (context.empty() || target.empty()) throw ComputationError("PPM cross-entropy needs non-empty texts");
  return PpmModel(context, order).cross_entropy(target);
}

std::array<double, 2> ppm_features(std::string_view a, std::string_view b, int order) {
  const double h12 = ppm_cross_entropy(a, b, order);
  const double h21 = ppm_cross_entropy(b, a, order);
  return {0.5 * (h12 + h21), std::abs(h12 - h21)};
}

double PpmVerifierModel::score(std::string_view a, std::string_view b) const {
  const auto f = ppm_features(a, b, order_);
  return regression_.predict(f);
}

io::Json PpmVerifierModel::to_json() const { return {{"order", order_}, {"regression", regression_.to_json()}}; }

PpmVerifierModel PpmVerifierModel::from_json(const io::Json& doc) {
  try {
    return {doc.at("order").get<int>(), LogisticModel::from_json(doc.at("regression"))};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed PPM model: ") + e.what());
  }
}

PpmVerifierModel ppm_train(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                           const PpmConfig& config) {
  if (config.order < 1) throw ConfigError("PPM order must be >= 1");
  std::vector<std::vector<double>> features;
  std::vector<std::uint8_t> labels;
  features.reserve(train_pairs.size());
  for (const auto& p : train_pairs) {
    const auto f = ppm_features(corpus.document(p.doc_a).text, corpus.document(p.doc_b).text, config.order);
    features.push_back({f[0], f[1]});
    labels.push_back(p.label ? 1 : 0);
  }
  LogisticOptions options;
  options.l2 = config.l2;
  return {config.order, fit_logistic(features, labels, options).model};
}

}  // namespace hits
