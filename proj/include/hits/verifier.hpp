#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "hits/corpus.hpp"
#include "hits/io.hpp"
#include "hits/metrics.hpp"
#include "hits/ngram.hpp"
#include "hits/ppm.hpp"
#include "hits/splitter.hpp"
#include "hits/topic_fit.hpp"

namespace hits {

enum class VerifierKind { kCharNGram, kPpm, kTopicFit };

inline constexpr VerifierKind kAllVerifiers[] = {VerifierKind::kCharNGram, VerifierKind::kPpm,
                                                 VerifierKind::kTopicFit};

// "char-ngram", "ppm", "topic-fit".
std::string_view to_string(VerifierKind kind);
VerifierKind parse_verifier_kind(std::string_view name);

struct VerifierConfig {
  NGramConfig char_ngram;
  PpmConfig ppm;
  TopicFitConfig topic_fit;
};

io::Json verifier_config_to_json(const VerifierConfig& config);

// A trained model. Scoring is const and safe to call concurrently.
class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual VerifierKind kind() const noexcept = 0;
  virtual double score(std::string_view a, std::string_view b) const = 0;
  virtual io::Json model_json() const = 0;
};

std::unique_ptr<Verifier> train_verifier(VerifierKind kind, std::span<const VerificationPair> train_pairs,
                                         const Corpus& corpus, const VerifierConfig& config);

inline constexpr std::string_view kModelFormat = "hits-model";
inline constexpr int kModelVersion = 1;

io::Json verifier_to_json(const Verifier& verifier);
std::unique_ptr<Verifier> verifier_from_json(const io::Json& doc);

// One entry per pair, in pair order.
PredictionSet predict(const Verifier& verifier, std::span<const VerificationPair> pairs, const Corpus& corpus);

// Tab-separated with a "#hits-predictions v1" line and a column header;
// scores use the shortest round-trip decimal form.
std::string predictions_to_tsv(const PredictionSet& preds);
PredictionSet predictions_from_tsv(std::string_view content, const std::string& source);

}  // namespace hits
