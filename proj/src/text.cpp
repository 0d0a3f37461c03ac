#include "crmls/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "crmls/errors.hpp"

namespace crmls {

double sparse_dot(const SparseVector& a, const std::vector<double>& dense) {
  double s = 0.0;
  for (const auto& [idx, val] : a.entries) {
    if (idx >= 0 && static_cast<std::size_t>(idx) < dense.size()) {
      s += val * dense[idx];
    }
  }
  return s;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    const unsigned char uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      current.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!current.empty()) {
      if (current.size() >= 2) tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (current.size() >= 2) tokens.push_back(std::move(current));
  return tokens;
}

TfidfVectorizer TfidfVectorizer::fit(const std::vector<std::string>& documents,
                                     std::size_t max_features) {
  // Document frequency per token; std::map keeps tie-breaking lexicographic.
  std::map<std::string, int> doc_freq;
  for (const std::string& doc : documents) {
    std::vector<std::string> toks = tokenize(doc);
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    for (auto& t : toks) ++doc_freq[t];
  }

  std::vector<std::pair<std::string, int>> by_freq(doc_freq.begin(),
                                                   doc_freq.end());
  std::stable_sort(by_freq.begin(), by_freq.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  if (by_freq.size() > max_features) by_freq.resize(max_features);
  std::sort(by_freq.begin(), by_freq.end());

  TfidfVectorizer v;
  const double n_docs = static_cast<double>(documents.size());
  v.tokens_.reserve(by_freq.size());
  v.idf_.reserve(by_freq.size());
  for (std::size_t i = 0; i < by_freq.size(); ++i) {
    v.tokens_.push_back(by_freq[i].first);
    v.idf_.push_back(std::log((1.0 + n_docs) / (1.0 + by_freq[i].second)) +
                     1.0);
    v.index_.emplace(by_freq[i].first, static_cast<int>(i));
  }
  return v;
}

SparseVector TfidfVectorizer::transform(std::string_view document) const {
  std::map<int, double> counts;
  for (const std::string& t : tokenize(document)) {
    auto it = index_.find(t);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  out.entries.reserve(counts.size());
  double norm_sq = 0.0;
  for (const auto& [idx, tf] : counts) {
    const double w = tf * idf_[idx];
    out.entries.emplace_back(idx, w);
    norm_sq += w * w;
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [idx, w] : out.entries) w *= inv;
  }
  return out;
}

TfidfVectorizer TfidfVectorizer::from_parts(std::vector<std::string> tokens,
                                            std::vector<double> idf) {
  if (tokens.size() != idf.size()) {
    throw DataError("vocabulary tokens and idf lengths differ");
  }
  TfidfVectorizer v;
  v.tokens_ = std::move(tokens);
  v.idf_ = std::move(idf);
  for (std::size_t i = 0; i < v.tokens_.size(); ++i) {
    v.index_.emplace(v.tokens_[i], static_cast<int>(i));
  }
  return v;
}

}  // namespace crmls
