#include "hits/corpus.hpp"

#include <utility>

#include "hits/error.hpp"
#include "hits/io.hpp"
#include "hits/text.hpp"

namespace hits {

namespace {

const std::vector<std::string> kFields = {"doc_id", "author_id", "topic_id", "text"};

void check_document(const Document& d) {
  if (d.doc_id.empty()) throw IntegrityError("document with empty doc_id");
  if (d.author_id.empty()) throw IntegrityError("document " + d.doc_id + " has empty author_id");
  if (d.topic_id.empty()) throw IntegrityError("document " + d.doc_id + " has empty topic_id");
  if (text::is_blank(d.text)) throw IntegrityError("document " + d.doc_id + " has empty text");
}

std::string field_string(const io::Json& value, const std::string& name, const std::string& source,
                         std::size_t line) {
  if (!value.is_string()) throw ParseError(source, line, "field '" + name + "' must be a string");
  return value.get<std::string>();
}

Document parse_record(const std::string& raw, const std::string& source, std::size_t line) {
  io::Json rec;
  try {
    rec = io::Json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError(source, line, "malformed record");
  }
  std::vector<std::string> values;
  if (rec.is_array()) {
    if (rec.size() != kFields.size()) throw ParseError(source, line, "record must have 4 fields");
    for (std::size_t i = 0; i < kFields.size(); ++i) values.push_back(field_string(rec[i], kFields[i], source, line));
  } else if (rec.is_object()) {
    for (const auto& f : kFields) {
      if (!rec.contains(f)) throw ParseError(source, line, "missing field '" + f + "'");
      values.push_back(field_string(rec[f], f, source, line));
    }
  } else {
    throw ParseError(source, line, "record must be an array or object");
  }
  Document d{values[0], values[1], values[2], values[3]};
  if (d.doc_id.empty()) throw ParseError(source, line, "empty doc_id");
  if (d.author_id.empty()) throw ParseError(source, line, "empty author_id");
  if (d.topic_id.empty()) throw ParseError(source, line, "empty topic_id");
  if (text::is_blank(d.text)) throw ParseError(source, line, "empty text");
  return d;
}

void check_header(const std::string& raw, const std::string& source) {
  io::Json header;
  try {
    header = io::Json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError(source, 1, "malformed schema header");
  }
  if (!header.is_object() || header.value("format", "") != kCorpusFormat) {
    throw ParseError(source, 1, "missing hits-corpus schema header");
  }
  if (header.value("version", 0) != kCorpusVersion) {
    throw ParseError(source, 1, "unsupported corpus schema version");
  }
  if (header.contains("fields") && header["fields"] != io::Json(kFields)) {
    throw ParseError(source, 1, "unexpected field order in header");
  }
}

}  // namespace

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  if (documents_.empty()) throw DataError("corpus has no documents");
  positions_.reserve(documents_.size());
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const auto& d = documents_[i];
    check_document(d);
    if (!positions_.emplace(d.doc_id, i).second) throw IntegrityError("duplicate doc_id \"" + d.doc_id + "\"");
    topic_index_[d.topic_id].push_back(d.doc_id);
    author_index_[d.author_id].push_back(d.doc_id);
  }
}

bool Corpus::contains(std::string_view doc_id) const { return positions_.count(std::string(doc_id)) > 0; }

std::size_t Corpus::position(std::string_view doc_id) const {
  auto it = positions_.find(std::string(doc_id));
  if (it == positions_.end()) throw LookupError("unknown doc_id \"" + std::string(doc_id) + "\"");
  return it->second;
}

const Document& Corpus::document(std::string_view doc_id) const { return documents_[position(doc_id)]; }

std::vector<std::string> Corpus::topic_ids() const {
  std::vector<std::string> ids;
  ids.reserve(topic_index_.size());
  for (const auto& [id, _] : topic_index_) ids.push_back(id);
  return ids;
}

Corpus parse_corpus(std::string_view content, const std::string& source_name) {
  const auto lines = io::split_lines(content);
  if (lines.empty() || text::is_blank(lines.front())) throw ParseError(source_name, 1, "missing schema header");
  check_header(lines.front(), source_name);
  std::vector<Document> docs;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (text::is_blank(lines[i])) continue;
    Document d = parse_record(lines[i], source_name, i + 1);
    if (auto [it, inserted] = seen.emplace(d.doc_id, i + 1); !inserted) {
      throw IntegrityError("duplicate doc_id \"" + d.doc_id + "\" at line " + std::to_string(i + 1) +
                           " (first seen at line " + std::to_string(it->second) + ")");
    }
    docs.push_back(std::move(d));
  }
  if (docs.empty()) throw DataError(source_name + ": corpus has no documents");
  Corpus corpus(std::move(docs));
  if (corpus.topic_count() < 2) throw DataError(source_name + ": corpus needs at least 2 topics");
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("corpus file not found: " + path.string());
  return parse_corpus(io::read_file(path), path.string());
}

std::string serialize_corpus(const Corpus& corpus) {
  io::Json header;
  header["format"] = kCorpusFormat;
  header["version"] = kCorpusVersion;
  header["fields"] = kFields;
  std::string out = header.dump() + "\n";
  for (const auto& d : corpus.documents()) {
    out += io::Json::array({d.doc_id, d.author_id, d.topic_id, d.text}).dump();
    out += '\n';
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  io::write_file(path, serialize_corpus(corpus));
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.topic_count = corpus.topic_index().size();
  s.document_count = corpus.size();
  s.author_count = corpus.author_index().size();
  for (const auto& [topic, ids] : corpus.topic_index()) s.docs_per_topic[topic] = ids.size();
  return s;
}

Corpus filter_to_topics(const Corpus& corpus, const std::set<std::string>& keep) {
  for (const auto& t : keep) {
    if (!corpus.topic_index().count(t)) throw LookupError("unknown topic_id \"" + t + "\"");
  }
  std::vector<Document> docs;
  for (const auto& d : corpus.documents()) {
    if (keep.count(d.topic_id)) docs.push_back(d);
  }
  return Corpus(std::move(docs));
}

Corpus relabel_topics(const Corpus& corpus, const std::map<std::string, std::string>& mapping) {
  std::vector<Document> docs = corpus.documents();
  for (auto& d : docs) {
    if (auto it = mapping.find(d.topic_id); it != mapping.end()) d.topic_id = it->second;
  }
  return Corpus(std::move(docs));
}

}  // namespace hits
