#include "hits/verifier.hpp"

#include <charconv>

#include "hits/error.hpp"

namespace hits {

namespace {

template <typename Model, VerifierKind Kind>
class ModelVerifier final : public Verifier {
 public:
  explicit ModelVerifier(Model model) : model_(std::move(model)) {}
  VerifierKind kind() const noexcept override { return Kind; }
  double score(std::string_view a, std::string_view b) const override { return model_.score(a, b); }
  io::Json model_json() const override { return model_.to_json(); }

 private:
  Model model_;
};

using CharNGramVerifier = ModelVerifier<NGramModel, VerifierKind::kCharNGram>;
using PpmVerifier = ModelVerifier<PpmVerifierModel, VerifierKind::kPpm>;
using TopicFitVerifier = ModelVerifier<TopicFitModel, VerifierKind::kTopicFit>;

constexpr std::string_view kPredictionsMagic = "#hits-predictions v1";
constexpr std::string_view kPredictionsHeader = "pair_id\tscore\tlabel";

}  // namespace

std::string_view to_string(VerifierKind kind) {
  switch (kind) {
    case VerifierKind::kCharNGram:
      return "char-ngram";
    case VerifierKind::kPpm:
      return "ppm";
    case VerifierKind::kTopicFit:
      return "topic-fit";
  }
  return "?";
}

VerifierKind parse_verifier_kind(std::string_view name) {
  for (auto k : kAllVerifiers) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown verifier \"" + std::string(name) + "\" (expected char-ngram, ppm or topic-fit)");
}

io::Json verifier_config_to_json(const VerifierConfig& c) {
  io::Json doc;
  doc["char-ngram"] = {{"n", c.char_ngram.n},
                       {"vocab_size", c.char_ngram.vocab_size},
                       {"lowercase", c.char_ngram.lowercase},
                       {"validation_fraction", c.char_ngram.validation_fraction},
                       {"seed", c.char_ngram.seed}};
  doc["ppm"] = {{"order", c.ppm.order}, {"l2", c.ppm.l2}};
  doc["topic-fit"] = {{"stoplist_size", c.topic_fit.stoplist_size},
                      {"vocab_size", c.topic_fit.vocab_size},
                      {"validation_fraction", c.topic_fit.validation_fraction},
                      {"seed", c.topic_fit.seed}};
  return doc;
}

std::unique_ptr<Verifier> train_verifier(VerifierKind kind, std::span<const VerificationPair> train_pairs,
                                         const Corpus& corpus, const VerifierConfig& config) {
  switch (kind) {
    case VerifierKind::kCharNGram:
      return std::make_unique<CharNGramVerifier>(char_ngram_train(train_pairs, corpus, config.char_ngram));
    case VerifierKind::kPpm:
      return std::make_unique<PpmVerifier>(ppm_train(train_pairs, corpus, config.ppm));
    case VerifierKind::kTopicFit:
      return std::make_unique<TopicFitVerifier>(topicfit_train(train_pairs, corpus, config.topic_fit));
  }
  throw ConfigError("unknown verifier kind");
}

io::Json verifier_to_json(const Verifier& verifier) {
  io::Json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelVersion;
  doc["kind"] = to_string(verifier.kind());
  doc["model"] = verifier.model_json();
  return doc;
}

std::unique_ptr<Verifier> verifier_from_json(const io::Json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kModelFormat || doc.at("version").get<int>() != kModelVersion) {
      throw DataError("not a hits-model v1 document");
    }
    const auto kind = parse_verifier_kind(doc.at("kind").get<std::string>());
    const auto& m = doc.at("model");
    switch (kind) {
      case VerifierKind::kCharNGram:
        return std::make_unique<CharNGramVerifier>(NGramModel::from_json(m));
      case VerifierKind::kPpm:
        return std::make_unique<PpmVerifier>(PpmVerifierModel::from_json(m));
      case VerifierKind::kTopicFit:
        return std::make_unique<TopicFitVerifier>(TopicFitModel::from_json(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(e.what());
  }
  throw DataError("unknown verifier kind");
}

PredictionSet predict(const Verifier& verifier, std::span<const VerificationPair> pairs, const Corpus& corpus) {
  std::vector<PredictionEntry> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const double s = verifier.score(corpus.document(p.doc_a).text, corpus.document(p.doc_b).text);
    out.push_back({p.pair_id, s, p.label});
  }
  return PredictionSet(std::move(out));
}

std::string predictions_to_tsv(const PredictionSet& preds) {
  std::string out;
  out += kPredictionsMagic;
  out += '\n';
  out += kPredictionsHeader;
  out += '\n';
  for (const auto& e : preds.entries()) {
    out += e.pair_id;
    out += '\t';
    out += io::format_double(e.score);
    out += '\t';
    out += e.label ? '1' : '0';
    out += '\n';
  }
  return out;
}

PredictionSet predictions_from_tsv(std::string_view content, const std::string& source) {
  const auto lines = io::split_lines(content);
  if (lines.size() < 2 || lines[0] != kPredictionsMagic) throw ParseError(source, 1, "missing predictions header");
  if (lines[1] != kPredictionsHeader) throw ParseError(source, 2, "unexpected column header");
  std::vector<PredictionEntry> entries;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError(source, i + 1, "expected 3 tab-separated fields");
    }
    PredictionEntry e;
    e.pair_id = line.substr(0, t1);
    const char* first = line.data() + t1 + 1;
    const char* last = line.data() + t2;
    auto [ptr, ec] = std::from_chars(first, last, e.score);
    if (ec != std::errc() || ptr != last) throw ParseError(source, i + 1, "invalid score");
    const auto label = line.substr(t2 + 1);
    if (label != "0" && label != "1") throw ParseError(source, i + 1, "label must be 0 or 1");
    e.label = label == "1";
    entries.push_back(std::move(e));
  }
  try {
    return PredictionSet(std::move(entries));
  } catch (const ComputationError& e) {
    throw DataError(source + ": " + e.what());
  }
}

}  // namespace hits
