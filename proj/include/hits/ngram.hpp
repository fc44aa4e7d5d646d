#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hits/calibration.hpp"
#include "hits/corpus.hpp"
#include "hits/io.hpp"
#include "hits/splitter.hpp"

namespace hits {

enum class NGramUnit { kCharacter, kWord };

struct NGramConfig {
  std::size_t n = 4;
  NGramUnit unit = NGramUnit::kCharacter;
  std::size_t vocab_size = 3000;
  bool lowercase = true;
  // Share of training pairs held out (by author) for the p1/p2 search.
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;
};

// Sparse L2-normalized term-frequency vector: (vocabulary index, weight),
// sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, double>>;

struct RawScore {
  double value = 0.0;
  // One of the texts had no in-vocabulary n-grams; value is 0.
  bool degenerate = false;
};

std::vector<std::string> extract_ngrams(std::string_view text, std::size_t n, NGramUnit unit, bool lowercase);

class NGramModel {
 public:
  NGramModel() = default;
  NGramModel(NGramConfig config, std::vector<std::string> vocabulary, std::vector<double> frequencies);

  const NGramConfig& config() const noexcept { return config_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<double>& frequencies() const noexcept { return frequencies_; }

  const CalibrationParams& calibration() const noexcept { return calibration_; }
  const ScoreRange& range() const noexcept { return range_; }
  void set_calibration(const CalibrationParams& params, const ScoreRange& range) {
    calibration_ = params;
    range_ = range;
  }

  SparseVector vectorize(std::string_view text) const;
  RawScore raw_score(std::string_view a, std::string_view b) const;
  double score(std::string_view a, std::string_view b) const;

  io::Json to_json() const;
  static NGramModel from_json(const io::Json& doc);

 private:
  NGramConfig config_;
  std::vector<std::string> vocabulary_;
  std::vector<double> frequencies_;
  std::unordered_map<std::string, std::size_t> index_;
  CalibrationParams calibration_;
  ScoreRange range_;
};

using TextLookup = std::function<std::string_view(const std::string& doc_id)>;

// Splits training pairs into fit and calibration parts. Whole authors (keyed
// by the author of doc_a) move to the calibration side until it holds the
// requested share; falls back to a stratified pair-level split when that
// leaves a side single-class.
struct PairPartition {
  std::vector<VerificationPair> fit;
  std::vector<VerificationPair> validation;
};
PairPartition hold_out_by_author(std::span<const VerificationPair> pairs, const Corpus& corpus, double fraction,
                                 std::uint64_t seed);

// Vocabulary: the vocab_size most frequent n-grams over the distinct
// training documents (ties by n-gram). Calibration: grid search on the
// held-out pairs.
NGramModel train_ngram_model(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                             const TextLookup& text_of, const NGramConfig& config);

NGramModel char_ngram_train(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                            const NGramConfig& config = {});

RawScore raw_score(const NGramModel& model, const VerificationPair& pair, const Corpus& corpus);

}  // namespace hits
