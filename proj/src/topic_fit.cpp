#include "hits/topic_fit.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "hits/error.hpp"
#include "hits/text.hpp"

namespace hits {

Stoplist build_stoplist(std::span<const std::string_view> texts, std::size_t k) {
  std::unordered_map<std::string, std::size_t> freq;
  for (auto t : texts) {
    for (auto& w : text::words(t)) ++freq[std::move(w)];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });
  if (ranked.size() > k) ranked.resize(k);
  Stoplist out;
  for (auto& [w, _] : ranked) out.insert(std::move(w));
  return out;
}

std::string topicfit_mask(std::string_view text, const Stoplist& stoplist) {
  if (stoplist.empty()) return std::string(text);
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  for (const auto& span : text::word_spans(text)) {
    out.append(text.substr(pos, span.begin - pos));
    const auto word = text.substr(span.begin, span.length);
    if (stoplist.contains(text::ascii_lower(word))) {
      out.append(text::code_point_count(word), '*');
    } else {
      out.append(word);
    }
    pos = span.begin + span.length;
  }
  out.append(text.substr(pos));
  return out;
}

RawScore TopicFitModel::raw_score(std::string_view a, std::string_view b) const {
  return inner_.raw_score(topicfit_mask(a, stoplist_), topicfit_mask(b, stoplist_));
}

double TopicFitModel::score(std::string_view a, std::string_view b) const {
  return calibrate(raw_score(a, b).value, inner_.calibration(), inner_.range());
}

io::Json TopicFitModel::to_json() const {
  return {{"stoplist", std::vector<std::string>(stoplist_.begin(), stoplist_.end())}, {"inner", inner_.to_json()}};
}

TopicFitModel TopicFitModel::from_json(const io::Json& doc) {
  try {
    Stoplist stop;
    for (const auto& w : doc.at("stoplist")) stop.insert(w.get<std::string>());
    return {std::move(stop), NGramModel::from_json(doc.at("inner"))};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed topic-fit model: ") + e.what());
  }
}

TopicFitModel topicfit_train(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                             const TopicFitConfig& config) {
  std::set<std::string> ids;
  for (const auto& p : train_pairs) {
    ids.insert(p.doc_a);
    ids.insert(p.doc_b);
  }
  if (ids.empty()) throw TrainingError("no training documents");
  std::vector<std::string_view> texts;
  for (const auto& id : ids) texts.push_back(corpus.document(id).text);
  Stoplist stop = build_stoplist(texts, config.stoplist_size);

  std::unordered_map<std::string, std::string> masked;
  for (const auto& id : ids) masked.emplace(id, topicfit_mask(corpus.document(id).text, stop));
  const TextLookup lookup = [&](const std::string& id) -> std::string_view { return masked.at(id); };

  NGramConfig inner;
  inner.n = 1;
  inner.unit = NGramUnit::kWord;
  inner.vocab_size = config.vocab_size;
  inner.lowercase = true;
  inner.validation_fraction = config.validation_fraction;
  inner.seed = config.seed;
  return {std::move(stop), train_ngram_model(train_pairs, corpus, lookup, inner)};
}

double topicfit_score(const TopicFitModel& model, const VerificationPair& pair, const Corpus& corpus) {
  return model.score(corpus.document(pair.doc_a).text, corpus.document(pair.doc_b).text);
}

}  // namespace hits
