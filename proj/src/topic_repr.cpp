#include "hits/topic_repr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "hits/error.hpp"
#include "hits/io.hpp"
#include "hits/rng.hpp"
#include "hits/text.hpp"

namespace hits {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ mix64(seed);
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<DocumentEmbedding> parse_embeddings(std::string_view content, const Corpus& corpus,
                                                const std::string& source_name) {
  const auto lines = io::split_lines(content);
  if (lines.empty()) throw ParseError(source_name, 1, "missing embeddings header");
  io::Json header;
  try {
    header = io::Json::parse(lines.front());
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError(source_name, 1, "malformed embeddings header");
  }
  if (!header.is_object() || header.value("format", "") != kEmbeddingFormat ||
      header.value("version", 0) != kEmbeddingVersion || !header.contains("dim") ||
      !header["dim"].is_number_unsigned()) {
    throw ParseError(source_name, 1, "invalid embeddings header");
  }
  const auto dim = header["dim"].get<std::size_t>();
  if (dim < 2) throw ParseError(source_name, 1, "embedding dimension must be >= 2");

  std::unordered_map<std::string, Vector> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (text::is_blank(lines[i])) continue;
    const std::size_t line_no = i + 1;
    const auto fields = split_tabs(lines[i]);
    if (fields.size() != dim + 1) {
      throw ParseError(source_name, line_no,
                       "dimension mismatch: expected " + std::to_string(dim) + " values, found " +
                           std::to_string(fields.size() - 1));
    }
    std::string doc_id(fields[0]);
    if (!corpus.contains(doc_id)) throw IntegrityError(source_name + ": unknown doc_id \"" + doc_id + "\"");
    Vector v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto f = fields[k + 1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v[k]);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v[k])) {
        throw ParseError(source_name, line_no, "invalid number in column " + std::to_string(k + 2));
      }
    }
    if (!rows.emplace(doc_id, std::move(v)).second) {
      throw ParseError(source_name, line_no, "duplicate doc_id \"" + doc_id + "\"");
    }
  }

  std::vector<DocumentEmbedding> out;
  std::vector<std::string> missing;
  out.reserve(corpus.size());
  for (const auto& d : corpus.documents()) {
    auto it = rows.find(d.doc_id);
    if (it == rows.end()) {
      missing.push_back(d.doc_id);
      continue;
    }
    out.push_back({d.doc_id, std::move(it->second)});
  }
  if (!missing.empty()) {
    std::string msg = source_name + ": no embedding for " + std::to_string(missing.size()) + " document(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw IntegrityError(msg);
  }
  return out;
}

std::vector<DocumentEmbedding> ingest_embeddings(const std::filesystem::path& path, const Corpus& corpus) {
  if (!std::filesystem::exists(path)) throw ConfigError("embeddings file not found: " + path.string());
  return parse_embeddings(io::read_file(path), corpus, path.string());
}

std::string serialize_embeddings(std::span<const DocumentEmbedding> embeddings) {
  const std::size_t dim = embeddings.empty() ? 0 : embeddings.front().vector.size();
  io::Json header;
  header["format"] = kEmbeddingFormat;
  header["version"] = kEmbeddingVersion;
  header["dim"] = dim;
  std::string out = header.dump() + "\n";
  for (const auto& e : embeddings) {
    if (e.vector.size() != dim) throw ComputationError("embedding " + e.doc_id + " has inconsistent dimension");
    if (e.doc_id.find_first_of("\t\n\r") != std::string::npos) {
      throw DataError("doc_id \"" + e.doc_id + "\" cannot be written to an embeddings file");
    }
    out += e.doc_id;
    for (double x : e.vector) {
      out += '\t';
      out += io::format_double(x);
    }
    out += '\n';
  }
  return out;
}

std::vector<DocumentEmbedding> encode_tfidf_hashed(const Corpus& corpus, std::size_t dim,
                                                   const EncoderConfig& config) {
  if (dim < 2) throw ConfigError("encoder dimension must be >= 2, got " + std::to_string(dim));

  std::vector<std::map<std::string, std::size_t>> counts;
  counts.reserve(corpus.size());
  std::unordered_map<std::string, std::size_t> df;
  for (const auto& d : corpus.documents()) {
    auto& c = counts.emplace_back();
    for (auto& w : text::words(d.text)) ++c[std::move(w)];
    for (const auto& [w, _] : c) ++df[w];
  }

  const double n_docs = static_cast<double>(corpus.size());
  std::vector<DocumentEmbedding> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& doc = corpus.documents()[i];
    Vector v(dim, 0.0);
    for (const auto& [w, tf] : counts[i]) {
      const double idf = std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df[w]))) + 1.0;
      const double weight = config.sublinear_tf ? 1.0 + std::log(static_cast<double>(tf)) : static_cast<double>(tf);
      const std::uint64_t h = fnv1a(w, config.hash_seed);
      const double sign = (config.signed_hash && (h >> 63)) ? -1.0 : 1.0;
      v[h % dim] += sign * weight * idf;
    }
    const double n = norm(v);
    if (!(n > 0.0)) throw DegenerateInputError("document " + doc.doc_id + " has no tokens to encode");
    for (auto& x : v) x /= n;
    out.push_back({doc.doc_id, std::move(v)});
  }
  return out;
}

std::vector<TopicRepresentation> build_topic_vectors(std::span<const DocumentEmbedding> embeddings,
                                                     const Corpus& corpus) {
  std::unordered_map<std::string_view, const Vector*> by_id;
  std::size_t dim = 0;
  for (const auto& e : embeddings) {
    if (dim == 0) dim = e.vector.size();
    if (e.vector.size() != dim) throw DataError("embedding " + e.doc_id + " has inconsistent dimension");
    by_id.emplace(e.doc_id, &e.vector);
  }
  std::vector<TopicRepresentation> topics;
  topics.reserve(corpus.topic_count());
  for (const auto& [topic, doc_ids] : corpus.topic_index()) {
    Vector sum(dim, 0.0);
    for (const auto& id : doc_ids) {
      auto it = by_id.find(id);
      if (it == by_id.end()) throw IntegrityError("no embedding for document \"" + id + "\"");
      const Vector& v = *it->second;
      for (std::size_t k = 0; k < dim; ++k) sum[k] += v[k];
    }
    const double n = static_cast<double>(doc_ids.size());
    for (auto& x : sum) x /= n;
    topics.push_back({topic, std::move(sum), doc_ids.size()});
  }
  return topics;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ComputationError("cosine of vectors with different dimensions");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw DegenerateInputError("cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> ids, std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
  if (values_.size() != ids_.size() * ids_.size()) throw ComputationError("similarity matrix shape mismatch");
}

std::size_t SimilarityMatrix::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return i;
  }
  throw LookupError("topic \"" + std::string(id) + "\" not in similarity matrix");
}

SimilarityMatrix topic_similarity_matrix(std::span<const TopicRepresentation> topics) {
  if (topics.size() < 2) throw ConfigError("similarity matrix needs at least 2 topics");
  for (const auto& t : topics) {
    if (!(norm(t.vector) > 0.0)) throw DegenerateInputError("topic \"" + t.topic_id + "\" has a zero vector");
  }
  const std::size_t n = topics.size();
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& t : topics) ids.push_back(t.topic_id);
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    values[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = cosine(topics[i].vector, topics[j].vector);
      values[i * n + j] = s;
      values[j * n + i] = s;
    }
  }
  return SimilarityMatrix(std::move(ids), std::move(values));
}

const TopicRepresentation& find_topic(std::span<const TopicRepresentation> topics, std::string_view topic_id) {
  for (const auto& t : topics) {
    if (t.topic_id == topic_id) return t;
  }
  throw LookupError("no topic vector for \"" + std::string(topic_id) + "\"");
}

}  // namespace hits
