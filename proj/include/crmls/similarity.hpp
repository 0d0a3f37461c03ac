#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crmls/dataset.hpp"
#include "crmls/svm.hpp"
#include "crmls/text.hpp"

namespace crmls {

enum class SimilarityKind { kGeo, kReview, kCategory, kCustom };

std::string to_string(SimilarityKind kind);
SimilarityKind similarity_kind_from_string(const std::string& name);

// Dense m x m venue-venue similarity matrix, row-major.
struct SimilarityMatrix {
  SimilarityKind kind = SimilarityKind::kCustom;
  bool symmetric = false;
  std::size_t m = 0;
  std::vector<double> values;

  static SimilarityMatrix zeros(SimilarityKind kind, std::size_t m,
                                bool symmetric = true);

  double at(std::size_t i, std::size_t j) const { return values[i * m + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * m + j]; }

  bool operator==(const SimilarityMatrix& other) const = default;
};

// Ordered matrices with one weight each; the trainer accepts any number.
struct SimilarityStack {
  std::vector<SimilarityMatrix> matrices;
  std::vector<double> weights;

  std::size_t size() const { return matrices.size(); }
  std::size_t m() const { return matrices.empty() ? 0 : matrices.front().m; }

  // Throws DataError unless |matrices| == |weights| >= 1, all matrices
  // share the same m, and all weights are >= 0.
  void validate() const;
};

// Cosine over category count vectors; 0 if either bag is empty.
double category_similarity(const Venue& a, const Venue& b);

struct ReviewSimilarityConfig {
  std::size_t vocab_cap = TfidfVectorizer::kDefaultVocabCap;
  double clip = 3.0;  // decision values clamp to [-clip, clip]
  HingeConfig hinge;
};

// Per-venue review classifiers over a shared TF-IDF vocabulary fitted on
// the union of all venues' reviews. The classifier of venue i applied to
// venue j's reviews gives the (asymmetric) review similarity.
class ReviewSimilarityModel {
 public:
  static ReviewSimilarityModel fit(const Dataset& dataset,
                                   const ReviewSimilarityConfig& cfg);

  // Mean decision value of classifier i over b's reviews, clipped.
  // 0 when classifier i is degenerate or b has no reviews.
  double similarity(std::size_t i, const Venue& b) const;

  const TfidfVectorizer& vectorizer() const { return vectorizer_; }
  const std::vector<LinearClassifier>& classifiers() const {
    return classifiers_;
  }
  double clip() const { return clip_; }

  static ReviewSimilarityModel from_parts(TfidfVectorizer vectorizer,
                                          std::vector<LinearClassifier> clfs,
                                          double clip);

 private:
  TfidfVectorizer vectorizer_;
  std::vector<LinearClassifier> classifiers_;
  double clip_ = 3.0;
};

// Classifier for one venue: positive reviews vs negative reviews,
// featurized with the shared vectorizer. Degenerate when a polarity is
// missing. The per-venue RNG stream is derived from cfg seed and index.
LinearClassifier train_review_classifier(std::size_t venue_index,
                                         const Dataset& dataset,
                                         const TfidfVectorizer& vectorizer,
                                         const ReviewSimilarityConfig& cfg);

SimilarityMatrix build_geo_matrix(const Dataset& dataset);
SimilarityMatrix build_category_matrix(const Dataset& dataset);
SimilarityMatrix build_review_matrix(const Dataset& dataset,
                                     const ReviewSimilarityModel& model);

// All three matrices in paper order (geo, review, category) with their
// weights. Also returns the fitted review model via out-parameter when
// the caller wants to persist the classifier store.
SimilarityStack build_stack(const Dataset& dataset,
                            const std::vector<double>& alphas,
                            const ReviewSimilarityConfig& cfg,
                            ReviewSimilarityModel* fitted_model = nullptr);

}  // namespace crmls
