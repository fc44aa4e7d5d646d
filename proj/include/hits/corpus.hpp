#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hits {

struct Document {
  std::string doc_id;
  std::string author_id;
  std::string topic_id;
  std::string text;

  friend bool operator==(const Document&, const Document&) = default;
};

using IdIndex = std::map<std::string, std::vector<std::string>, std::less<>>;

// Immutable collection of topic- and author-labeled documents. Documents keep
// their input order; the topic and author indices are ordered by id and list
// doc_ids in document order.
class Corpus {
 public:
  // Throws IntegrityError on duplicate doc_ids or invalid documents, and
  // DataError when `documents` is empty.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const IdIndex& topic_index() const noexcept { return topic_index_; }
  const IdIndex& author_index() const noexcept { return author_index_; }

  std::size_t size() const noexcept { return documents_.size(); }
  std::size_t topic_count() const noexcept { return topic_index_.size(); }

  bool contains(std::string_view doc_id) const;
  // Throws LookupError for unknown ids.
  const Document& document(std::string_view doc_id) const;
  std::size_t position(std::string_view doc_id) const;

  std::vector<std::string> topic_ids() const;

 private:
  std::vector<Document> documents_;
  IdIndex topic_index_;
  IdIndex author_index_;
  std::unordered_map<std::string, std::size_t> positions_;
};

struct CorpusStats {
  std::size_t topic_count = 0;
  std::size_t document_count = 0;
  std::size_t author_count = 0;
  std::map<std::string, std::size_t> docs_per_topic;
};

inline constexpr std::string_view kCorpusFormat = "hits-corpus";
inline constexpr int kCorpusVersion = 1;

// Newline-delimited JSON. Line 1 is the schema header
//   {"format":"hits-corpus","version":1,"fields":["doc_id","author_id","topic_id","text"]}
// and every following line is one record, a JSON array in field order (JSON
// objects keyed by field name are accepted too). Blank lines are skipped.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::string_view content, const std::string& source_name = "<corpus>");
std::string serialize_corpus(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

CorpusStats corpus_stats(const Corpus& corpus);

// Throws LookupError naming the first unknown topic in `keep`.
Corpus filter_to_topics(const Corpus& corpus, const std::set<std::string>& keep);

// Moves every document whose topic is a key of `mapping` to the mapped topic.
Corpus relabel_topics(const Corpus& corpus, const std::map<std::string, std::string>& mapping);

}  // namespace hits
