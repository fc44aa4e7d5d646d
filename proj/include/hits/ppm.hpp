#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hits/corpus.hpp"
#include "hits/io.hpp"
#include "hits/logistic.hpp"
#include "hits/splitter.hpp"

namespace hits {

// Order-k prediction-by-partial-matching model over bytes, built from one
// context text. Escape estimation is PPM method C with full exclusion,
// falling back to a uniform distribution over the 256 byte values. The
// model is frozen once built: scoring a target does not update it.
class PpmModel {
 public:
  PpmModel(std::string_view context, int order);

  int order() const noexcept { return order_; }

  // Average -log2 P(byte | preceding bytes of target) in bits per byte.
  double cross_entropy(std::string_view target) const;

 private:
  struct Node {
    std::vector<std::pair<std::uint8_t, std::uint32_t>> counts;    // symbol, count
    std::vector<std::pair<std::uint8_t, std::uint32_t>> children;  // preceding byte, node
    std::uint32_t total = 0;
  };

  std::uint32_t child(std::uint32_t node, std::uint8_t byte) const;
  std::uint32_t child_or_insert(std::uint32_t node, std::uint8_t byte);
  void count(std::uint32_t node, std::uint8_t symbol);

  int order_;
  std::vector<Node> nodes_;
};

// Cross-entropy of target under a PPM model of context. Both texts must be
// non-empty.
double ppm_cross_entropy(std::string_view context, std::string_view target, int order);

struct PpmConfig {
  int order = 5;
  double l2 = 1e-4;
};

// {mean(h12, h21), |h12 - h21|} where h12 is the cross-entropy of b under a
// model of a. Symmetric in (a, b).
std::array<double, 2> ppm_features(std::string_view a, std::string_view b, int order);

class PpmVerifierModel {
 public:
  PpmVerifierModel() = default;
  PpmVerifierModel(int order, LogisticModel regression) : order_(order), regression_(std::move(regression)) {}

  int order() const noexcept { return order_; }
  const LogisticModel& regression() const noexcept { return regression_; }

  double score(std::string_view a, std::string_view b) const;

  io::Json to_json() const;
  static PpmVerifierModel from_json(const io::Json& doc);

 private:
  int order_ = 5;
  LogisticModel regression_;
};

PpmVerifierModel ppm_train(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                           const PpmConfig& config = {});

}  // namespace hits
