#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hits/corpus.hpp"
#include "hits/io.hpp"
#include "hits/ngram.hpp"
#include "hits/splitter.hpp"

namespace hits {

using Stoplist = std::set<std::string, std::less<>>;

// The k most frequent lowercase word types over the given texts, ties
// broken by the word. Smaller when fewer types exist.
Stoplist build_stoplist(std::span<const std::string_view> texts, std::size_t k);

// Replaces every word whose lowercase form is in the stoplist with one
// asterisk per code point. Everything else is kept byte for byte.
std::string topicfit_mask(std::string_view text, const Stoplist& stoplist);

struct TopicFitConfig {
  std::size_t stoplist_size = 200;
  std::size_t vocab_size = 3000;
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;
};

class TopicFitModel {
 public:
  TopicFitModel() = default;
  TopicFitModel(Stoplist stoplist, NGramModel inner) : stoplist_(std::move(stoplist)), inner_(std::move(inner)) {}

  const Stoplist& stoplist() const noexcept { return stoplist_; }
  const NGramModel& inner() const noexcept { return inner_; }

  RawScore raw_score(std::string_view a, std::string_view b) const;
  double score(std::string_view a, std::string_view b) const;

  io::Json to_json() const;
  static TopicFitModel from_json(const io::Json& doc);

 private:
  Stoplist stoplist_;
  NGramModel inner_;
};

// Stoplist from the distinct training documents, then the word-unigram
// n-gram pipeline on the masked texts.
TopicFitModel topicfit_train(std::span<const VerificationPair> train_pairs, const Corpus& corpus,
                             const TopicFitConfig& config = {});

double topicfit_score(const TopicFitModel& model, const VerificationPair& pair, const Corpus& corpus);

}  // namespace hits
