#pragma once

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "hits/corpus.hpp"
#include "hits/rng.hpp"
#include "hits/topic_repr.hpp"

namespace hits::testing {

inline Document doc(std::string id, std::string author, std::string topic, std::string text) {
  return {std::move(id), std::move(author), std::move(topic), std::move(text)};
}

// Unit-norm random topic vectors with non-negative entries, so all cosines
// are non-negative as with bag-of-words embeddings.
inline std::vector<TopicRepresentation> random_topics(Rng& rng, std::size_t n, std::size_t dim,
                                                      bool non_negative = true) {
  std::vector<TopicRepresentation> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(dim);
    for (auto& x : v) x = non_negative ? rng.uniform() : rng.normal();
    char name[16];
    std::snprintf(name, sizeof name, "t%02zu", i);
    out.push_back({name, std::move(v), 1});
  }
  return out;
}

inline double naive_cosine(const Vector& a, const Vector& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

// Temporary directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    Rng rng(std::hash<std::string>{}(tag) ^ static_cast<std::uint64_t>(std::time(nullptr)));
    path_ = std::filesystem::temp_directory_path() / ("hits-" + tag + "-" + std::to_string(rng.next() % 1000000007));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace hits::testing

namespace hits::testing {

// Relative path -> file bytes for every regular file under root.
inline std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    out[std::filesystem::relative(e.path(), root).generic_string()] =
        std::string(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

}  // namespace hits::testing
