#include "hits/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "hits/error.hpp"
#include "hits/rng.hpp"

namespace hits {

namespace {

std::string numbered(std::string_view prefix, std::size_t i, int width = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, i);
  return std::string(prefix) + buf;
}

Vector random_unit(Rng& rng, std::size_t dim) {
  Vector v(dim);
  double n = 0.0;
  for (auto& x : v) {
    x = rng.normal();
    n += x * x;
  }
  n = std::sqrt(n);
  for (auto& x : v) x /= n;
  return v;
}

// Cumulative-weight sampler over a fixed index range.
class Categorical {
 public:
  explicit Categorical(const std::vector<double>& weights) {
    double s = 0.0;
    for (double w : weights) cum_.push_back(s += w);
  }
  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform() * cum_.back();
    return static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
  }

 private:
  std::vector<double> cum_;
};

std::vector<double> zipf(std::size_t n, double s = 1.0) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / std::pow(static_cast<double>(i + 1), s);
  return w;
}

const std::vector<std::string>& function_words() {
  static const std::vector<std::string> words = {
      "the",   "of",   "and",  "a",     "to",   "in",    "is",   "was",  "he",   "she",  "it",   "that",
      "for",   "on",   "with", "as",    "his",  "her",   "at",   "by",   "from", "they", "we",   "but",
      "not",   "or",   "had",  "have",  "be",   "this",  "which", "an",  "were", "all",  "one",  "there",
      "so",    "if",   "would", "what", "their", "been", "when", "who",  "into", "out",  "up",   "then",
      "them",  "could", "more", "some", "no",   "him",   "my",   "me",   "just", "very", "only", "still"};
  return words;
}

class WordMaker {
 public:
  explicit WordMaker(Rng& rng) : rng_(rng) {
    for (const auto& w : function_words()) used_.insert(w);
  }
  std::string make() {
    static constexpr std::string_view consonants = "bcdfghjklmnprstvwz";
    static constexpr std::string_view vowels = "aeiou";
    while (true) {
      const std::size_t syllables = 2 + rng_.below(2);
      std::string w;
      for (std::size_t s = 0; s < syllables; ++s) {
        w += consonants[rng_.below(consonants.size())];
        w += vowels[rng_.below(vowels.size())];
      }
      if (rng_.below(2)) w += consonants[rng_.below(consonants.size())];
      if (used_.insert(w).second) return w;
    }
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

struct AuthorStyle {
  Categorical function_choice;
  std::vector<std::size_t> favorites;  // indices into the cluster pool
  double comma_rate;
  double semicolon_rate;
  Categorical sentence_end;  // ".", "!", "?", "..."
  double sentence_length;
};

}  // namespace

GeometryCorpus synth_geometry_corpus(std::uint64_t seed, const GeometryConfig& c) {
  if (c.dim < 2 || c.docs_per_topic == 0 || c.author_count == 0) throw ConfigError("invalid geometry config");
  Rng rng(derive_seed(seed, {0x67656fULL}));
  const std::size_t clusters = c.pair_count + c.singleton_count;
  const Vector base = random_unit(rng, c.dim);
  const Vector hub = random_unit(rng, c.dim);

  std::vector<Vector> centers;
  std::vector<std::size_t> cluster_of;
  for (std::size_t k = 0; k < clusters; ++k) {
    Vector center = random_unit(rng, c.dim);
    const double w = (k < c.pair_count ? c.hub_high : c.hub_low) + rng.uniform(-c.hub_jitter, c.hub_jitter);
    for (std::size_t i = 0; i < c.dim; ++i) center[i] += w * hub[i] + c.base_weight * base[i];
    const std::size_t copies = k < c.pair_count ? 2 : 1;
    for (std::size_t t = 0; t < copies; ++t) {
      Vector topic = center;
      for (auto& x : topic) x += c.topic_noise * rng.normal() / std::sqrt(static_cast<double>(c.dim));
      centers.push_back(std::move(topic));
      cluster_of.push_back(k);
    }
  }

  // Topic ids are shuffled so twins are not adjacent in id order.
  std::vector<std::size_t> name_of(centers.size());
  for (std::size_t i = 0; i < name_of.size(); ++i) name_of[i] = i;
  rng.shuffle(name_of);

  std::vector<Document> docs;
  std::vector<DocumentEmbedding> embeddings;
  std::vector<std::pair<std::string, std::string>> planted;
  std::vector<std::string> topic_names(centers.size());
  for (std::size_t t = 0; t < centers.size(); ++t) topic_names[t] = numbered("topic", name_of[t]);
  for (std::size_t t = 0; t < centers.size(); ++t) {
    for (std::size_t d = 0; d < c.docs_per_topic; ++d) {
      Document doc;
      doc.doc_id = topic_names[t] + "-" + numbered("d", d);
      doc.author_id = numbered("author", rng.below(c.author_count));
      doc.topic_id = topic_names[t];
      doc.text = "synthetic document " + doc.doc_id;
      Vector v = centers[t];
      for (auto& x : v) x += c.doc_noise * rng.normal() / std::sqrt(static_cast<double>(c.dim));
      embeddings.push_back({doc.doc_id, std::move(v)});
      docs.push_back(std::move(doc));
    }
  }
  for (std::size_t t = 0; t + 1 < centers.size(); ++t) {
    if (cluster_of[t] == cluster_of[t + 1]) {
      auto a = topic_names[t];
      auto b = topic_names[t + 1];
      if (b < a) std::swap(a, b);
      planted.emplace_back(std::move(a), std::move(b));
    }
  }
  return {Corpus(std::move(docs)), std::move(embeddings), std::move(planted)};
}

Corpus synth_style_corpus(std::uint64_t seed, const StyleCorpusConfig& c) {
  if (c.clusters == 0 || c.topics_per_cluster == 0 || c.authors_per_cluster == 0 || c.docs_per_author_topic == 0 ||
      c.words_per_doc == 0 || !(c.length_jitter >= 0.0 && c.length_jitter < 1.0) || c.pool_size == 0 || c.generic_size == 0 || c.favorites > c.pool_size) {
    throw ConfigError("invalid style corpus config");
  }
  Rng rng(derive_seed(seed, {0x7374796cULL}));
  WordMaker maker(rng);

  std::vector<std::string> generic;
  for (std::size_t i = 0; i < c.generic_size; ++i) generic.push_back(maker.make());
  const Categorical generic_choice(zipf(generic.size()));
  const auto& fw = function_words();
  const auto fw_base = zipf(fw.size(), 0.8);

  std::vector<Document> docs;
  std::size_t author_serial = 0;
  for (std::size_t k = 0; k < c.clusters; ++k) {
    std::vector<std::string> pool;
    for (std::size_t i = 0; i < c.pool_size; ++i) pool.push_back(maker.make());
    std::vector<std::vector<std::string>> specific(c.topics_per_cluster);
    for (auto& s : specific) {
      for (std::size_t i = 0; i < c.topic_specific; ++i) s.push_back(maker.make());
    }

    std::vector<AuthorStyle> authors;
    for (std::size_t a = 0; a < c.authors_per_cluster; ++a) {
      std::vector<double> weights = fw_base;
      for (std::size_t i = 0; i < 6; ++i) weights[rng.below(weights.size())] *= c.style_boost;
      std::vector<std::size_t> idx(pool.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      rng.shuffle(idx);
      idx.resize(c.favorites);
      std::vector<double> ends(4);
      for (auto& e : ends) e = 0.05 + rng.uniform();
      ends[0] += 1.0;
      authors.push_back({Categorical(weights), std::move(idx), rng.uniform(0.02, 0.2), rng.uniform(0.0, 0.06),
                         Categorical(ends), rng.uniform(6.0, 16.0)});
    }

    for (std::size_t t = 0; t < c.topics_per_cluster; ++t) {
      const std::string topic = numbered("topic", k) + static_cast<char>('a' + t);
      for (std::size_t a = 0; a < c.authors_per_cluster; ++a) {
        const AuthorStyle& style = authors[a];
        const std::string author = numbered("author", author_serial + a, 3);
        for (std::size_t d = 0; d < c.docs_per_author_topic; ++d) {
          const double scale = 1.0 + c.length_jitter * rng.uniform(-1.0, 1.0);
          const auto length = std::max<std::size_t>(
              3, static_cast<std::size_t>(std::lround(scale * static_cast<double>(c.words_per_doc))));
          std::string text;
          bool sentence_start = true;
          std::size_t in_sentence = 0;
          for (std::size_t w = 0; w < length; ++w) {
            std::string word;
            const double u = rng.uniform();
            if (u < c.function_rate) {
              word = fw[style.function_choice.draw(rng)];
            } else if (u < c.function_rate + c.keyword_rate) {
              const double v = rng.uniform();
              if (v < c.favorite_share) {
                word = pool[style.favorites[rng.below(style.favorites.size())]];
              } else if (!specific[t].empty() && v < c.favorite_share + (1.0 - c.favorite_share) / 3.0) {
                word = specific[t][rng.below(specific[t].size())];
              } else {
                word = pool[rng.below(pool.size())];
              }
            } else {
              word = generic[generic_choice.draw(rng)];
            }
            if (sentence_start) {
              word[0] = static_cast<char>(word[0] - 'a' + 'A');
              sentence_start = false;
            } else {
              text += ' ';
            }
            text += word;
            ++in_sentence;
            const bool last = w + 1 == length;
            const double stop = 1.0 / style.sentence_length;
            if (last || (in_sentence >= 3 && rng.uniform() < stop)) {
              static constexpr const char* kEnds[] = {".", "!", "?", "..."};
              text += kEnds[last ? 0 : style.sentence_end.draw(rng)];
              sentence_start = true;
              in_sentence = 0;
            } else if (rng.uniform() < style.comma_rate) {
              text += ',';
            } else if (rng.uniform() < style.semicolon_rate) {
              text += ';';
            }
          }
          docs.push_back({topic + "-" + author + "-" + numbered("d", d), author, topic, std::move(text)});
        }
      }
    }
    author_serial += c.authors_per_cluster;
  }
  return Corpus(std::move(docs));
}

}  // namespace hits
