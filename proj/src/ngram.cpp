#include "hits/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hits/error.hpp"
#include "hits/rng.hpp"
#include "hits/text.hpp"

namespace hits {

namespace {

std::string_view unit_name(NGramUnit unit) { return unit == NGramUnit::kCharacter ? "character" : "word"; }

NGramUnit parse_unit(std::string_view name) {
  if (name == "character") return NGramUnit::kCharacter;
  if (name == "word") return NGramUnit::kWord;
  throw DataError("unknown n-gram unit \"" + std::string(name) + "\"");
}

}  // namespace

std::vector<std::string> extract_ngrams(std::string_view text, std::size_t n, NGramUnit unit, bool lowercase) {
  if (n == 0) throw ConfigError("n-gram order must be >= 1");
  std::vector<std::string> grams;
  if (unit == NGramUnit::kCharacter) {
    const std::string lowered = lowercase ? text::ascii_lower(text) : std::string(text);
    const auto offsets = text::code_point_offsets(lowered);
    const std::size_t count = offsets.size() - 1;
    if (count < n) return grams;
    grams.reserve(count - n + 1);
    for (std::size_t i = 0; i + n <= count; ++i) grams.push_back(lowered.substr(offsets[i], offsets[i + n] - offsets[i]));
  } else {
    std::vector<std::string> tokens;
    for (const auto& span : text::word_spans(text)) {
      auto tok = std::string(text.substr(span.begin, span.length));
      tokens.push_back(lowercase ? text::ascii_lower(tok) : std::move(tok));
    }
    if (tokens.size() < n) return grams;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string g = tokens[i];
      for (std::size_t k = 1; k < n; ++k) g += " " + tokens[i + k];
      grams.push_back(std::move(g));
    }
  }
  return grams;
}

NGramModel::NGramModel(NGramConfig config, std::vector<std::string> vocabulary, std::vector<double> frequencies)
    : config_(config), vocabulary_(std::move(vocabulary)), frequencies_(std::move(frequencies)) {
  if (frequencies_.size() != vocabulary_.size()) throw ComputationError("vocabulary and frequencies differ in size");
  index_.reserve(vocabulary_.size());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i], i).second) throw DataError("duplicate vocabulary entry");
  }
}

SparseVector NGramModel::vectorize(std::string_view text) const {
  std::map<std::size_t, double> counts;
  for (const auto& g : extract_ngrams(text, config_.n, config_.unit, config_.lowercase)) {
    if (auto it = index_.find(g); it != index_.end()) counts[it->second] += 1.0;
  }
  double norm = 0.0;
  for (const auto& [_, c] : counts) norm += c * c;
  norm = std::sqrt(norm);
  SparseVector v(counts.begin(), counts.end());
  if (norm > 0.0) {
    for (auto& [_, w] : v) w /= norm;
  }
  return v;
}

RawScore NGramModel::raw_score(std::string_view a, std::string_view b) const {
  const SparseVector va = vectorize(a);
  const SparseVector vb = vectorize(b);
  if (va.empty() || vb.empty()) return {0.0, true};
  double dot = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < va.size() && j < vb.size()) {
    if (va[i].first < vb[j].first) {
      ++i;
    } else if (vb[j].first < va[i].first) {
      ++j;
    } else {
      dot += va[i].second * vb[j].second;
      ++i;
      ++j;
    }
  }
  return {std::clamp(dot, -1.0, 1.0), false};
}

double NGramModel::score(std::string_view a, std::string_view b) const {
  return calibrate(raw_score(a, b).value, calibration_, range_);
}

io::Json NGramModel::to_json() const {
  io::Json doc;
  doc["n"] = config_.n;
  doc["unit"] = unit_name(config_.unit);
  doc["vocab_size"] = config_.vocab_size;
  doc["lowercase"] = config_.lowercase;
  doc["validation_fraction"] = config_.validation_fraction;
  doc["seed"] = config_.seed;
  doc["calibration"] = {{"p1", calibration_.p1}, {"p2", calibration_.p2},
                        {"raw_min", range_.lo}, {"raw_max", range_.hi}};
  io::Json vocab = io::Json::array();
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) vocab.push_back(io::Json::array({vocabulary_[i], frequencies_[i]}));
  doc["vocabulary"] = std::move(vocab);
  return doc;
}

NGramModel NGramModel::from_json(const io::Json& doc) {
  try {
    NGramConfig c;
    c.n = doc.at("n").get<std::size_t>();
    c.unit = parse_unit(doc.at("unit").get<std::string>());
    c.vocab_size = doc.at("vocab_size").get<std::size_t>();
    c.lowercase = doc.at("lowercase").get<bool>();
    c.validation_fraction = doc.at("validation_fraction").get<double>();
    c.seed = doc.at("seed").get<std::uint64_t>();
    std::vector<std::string> vocab;
    std::vector<double> freq;
    for (const auto& e : doc.at("vocabulary")) {
      vocab.push_back(e.at(0).get<std::string>());
      freq.push_back(e.at(1).get<double>());
    }
    NGramModel m(c, std::move(vocab), std::move(freq));
    const auto& cal = doc.at("calibration");
    m.set_calibration({cal.at("p1").get<double>(), cal.at("p2").get<double>()},
                      {cal.at("raw_min").get<double>(), cal.at("raw_max").get<double>()});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed n-gram model: ") + e.what());
  }
}

PairPartition hold_out_by_author(std::span<const VerificationPair> pairs, const Corpus& corpus, double fraction,
                                 std::uint64_t seed) {
  auto two_classes = [](const std::vector<VerificationPair>& ps) {
    bool pos = false;
    bool neg = false;
    for (const auto& p : ps) (p.label ? pos : neg) = true;
    return pos && neg;
  };
  std::vector<VerificationPair> all(pairs.begin(), pairs.end());
  if (!two_classes(all)) throw TrainingError("training pairs must contain both classes");

  Rng rng(derive_seed(seed, {0x63616c6962ULL}));
  const auto target = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(all.size())));

  std::map<std::string, std::vector<std::size_t>> by_author;
  for (std::size_t i = 0; i < all.size(); ++i) by_author[corpus.document(all[i].doc_a).author_id].push_back(i);
  std::vector<std::string> authors;
  for (const auto& [a, _] : by_author) authors.push_back(a);
  rng.shuffle(authors);

  std::vector<bool> held(all.size(), false);
  std::size_t count = 0;
  for (const auto& a : authors) {
    if (count >= target) break;
    for (std::size_t i : by_author[a]) held[i] = true;
    count += by_author[a].size();
  }
  PairPartition part;
  for (std::size_t i = 0; i < all.size(); ++i) (held[i] ? part.validation : part.fit).push_back(all[i]);
  if (two_classes(part.validation) && !part.fit.empty()) return part;

  // Stratified fallback.
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < all.size(); ++i) (all[i].label ? pos : neg).push_back(i);
  rng.shuffle(pos);
  rng.shuffle(neg);
  std::fill(held.begin(), held.end(), false);
  auto take = [&](const std::vector<std::size_t>& idx) {
    const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(idx.size()))));
    for (std::size_t i = 0; i < k && i < idx.size(); ++i) held[idx[i]] = true;
  };
  take(pos);
  take(neg);
  part = {};
  for (std::size_t i = 0; i < all.size(); ++i) (held[i] ? part.validation : part.fit).push_back(all[i]);
  return part;
}

NGramModel train_ngram_model(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                             const TextLookup& text_of, const NGramConfig& config) {
  if (config.vocab_size == 0) throw ConfigError("vocabulary size must be >= 1");
  std::set<std::string> doc_ids;
  for (const auto& p : train_pairs) {
    doc_ids.insert(p.doc_a);
    doc_ids.insert(p.doc_b);
  }
  if (doc_ids.empty()) throw TrainingError("no training documents");

  std::unordered_map<std::string, double> freq;
  for (const auto& id : doc_ids) {
    for (auto& g : extract_ngrams(text_of(id), config.n, config.unit, config.lowercase)) freq[std::move(g)] += 1.0;
  }
  if (freq.empty()) throw TrainingError("training documents contain no n-grams");
  std::vector<std::pair<std::string, double>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > config.vocab_size) ranked.resize(config.vocab_size);
  std::vector<std::string> vocab;
  std::vector<double> weights;
  for (auto& [g, f] : ranked) {
    vocab.push_back(std::move(g));
    weights.push_back(f);
  }
  NGramModel model(config, std::move(vocab), std::move(weights));

  const PairPartition part = hold_out_by_author(train_pairs, corpus, config.validation_fraction, config.seed);
  std::vector<std::uint8_t> labels;
  std::vector<double> raws;
  for (const auto& p : part.validation) {
    labels.push_back(p.label ? 1 : 0);
    raws.push_back(model.raw_score(text_of(p.doc_a), text_of(p.doc_b)).value);
  }
  const CalibrationFit fit = grid_search_calibration(labels, raws);
  model.set_calibration(fit.params, fit.range);
  return model;
}

NGramModel char_ngram_train(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                            const NGramConfig& config) {
  return train_ngram_model(
      train_pairs, corpus, [&](const std::string& id) -> std::string_view { return corpus.document(id).text; }, config);
}

RawScore raw_score(const NGramModel& model, const VerificationPair& pair, const Corpus& corpus) {
  return model.raw_score(corpus.document(pair.doc_a).text, corpus.document(pair.doc_b).text);
}

}  // namespace hits
