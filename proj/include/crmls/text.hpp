#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crmls {

// Index/value pairs sorted by index, no duplicates.
struct SparseVector {
  std::vector<std::pair<int, double>> entries;
};

double sparse_dot(const SparseVector& a, const std::vector<double>& dense);

// Lowercase, split on non-alphanumeric bytes, drop tokens shorter than
// two characters.
std::vector<std::string> tokenize(std::string_view text);

// TF-IDF featurizer with a frequency-capped vocabulary. Token selection
// is by document frequency, ties broken lexicographically, so fitting is
// deterministic. Transformed vectors are L2-normalized.
class TfidfVectorizer {
 public:
  static constexpr std::size_t kDefaultVocabCap = 20000;

  static TfidfVectorizer fit(const std::vector<std::string>& documents,
                             std::size_t max_features = kDefaultVocabCap);

  SparseVector transform(std::string_view document) const;

  std::size_t vocabulary_size() const { return tokens_.size(); }
  // Tokens in index order plus their idf weights; used by the store format.
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<double>& idf() const { return idf_; }

  static TfidfVectorizer from_parts(std::vector<std::string> tokens,
                                    std::vector<double> idf);

 private:
  std::vector<std::string> tokens_;
  std::vector<double> idf_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace crmls
