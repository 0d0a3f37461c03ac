#include "crmls/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "crmls/errors.hpp"
#include "crmls/geo.hpp"

namespace crmls {

std::string to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kGeo: return "geo";
    case SimilarityKind::kReview: return "review";
    case SimilarityKind::kCategory: return "category";
    case SimilarityKind::kCustom: return "custom";
  }
  return "custom";
}

SimilarityKind similarity_kind_from_string(const std::string& name) {
  if (name == "geo") return SimilarityKind::kGeo;
  if (name == "review") return SimilarityKind::kReview;
  if (name == "category") return SimilarityKind::kCategory;
  if (name == "custom") return SimilarityKind::kCustom;
  throw DataError("unknown similarity kind: " + name);
}

SimilarityMatrix SimilarityMatrix::zeros(SimilarityKind kind, std::size_t m,
                                         bool symmetric) {
  SimilarityMatrix s;
  s.kind = kind;
  s.symmetric = symmetric;
  s.m = m;
  s.values.assign(m * m, 0.0);
  return s;
}

void SimilarityStack::validate() const {
  if (matrices.empty()) {
    throw DataError("similarity stack must hold at least one matrix");
  }
  if (matrices.size() != weights.size()) {
    throw DataError("similarity stack has " + std::to_string(matrices.size()) +
                    " matrices but " + std::to_string(weights.size()) +
                    " weights");
  }
  const std::size_t m0 = matrices.front().m;
  for (const auto& s : matrices) {
    if (s.m != m0) throw DataError("similarity matrices disagree on m");
    if (s.values.size() != s.m * s.m) {
      throw DataError("similarity matrix storage does not match m");
    }
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw DataError("similarity weights must be >= 0");
  }
}

double category_similarity(const Venue& a, const Venue& b) {
  if (a.categories.empty() || b.categories.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [label, count] : a.categories) {
    na += static_cast<double>(count) * count;
    auto it = b.categories.find(label);
    if (it != b.categories.end()) {
      dot += static_cast<double>(count) * it->second;
    }
  }
  for (const auto& [label, count] : b.categories) {
    nb += static_cast<double>(count) * count;
  }
  // sqrt of the product, not product of sqrts: keeps identical bags at
  // exactly 1 and the {A,B}x{A,C} case at exactly 0.5.
  return dot / std::sqrt(na * nb);
}

namespace {

std::uint64_t per_venue_seed(std::uint64_t base, std::size_t venue_index) {
  // splitmix64 step keeps per-venue streams decorrelated but reproducible.
  std::uint64_t x = base + 0x9e3779b97f4a7c15ULL * (venue_index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

LinearClassifier train_review_classifier(std::size_t venue_index,
                                         const Dataset& dataset,
                                         const TfidfVectorizer& vectorizer,
                                         const ReviewSimilarityConfig& cfg) {
  const Venue& venue = dataset.venues().at(venue_index);
  std::vector<SparseVector> xs;
  std::vector<int> ys;
  xs.reserve(venue.reviews.size());
  ys.reserve(venue.reviews.size());
  for (const Review& r : venue.reviews) {
    xs.push_back(vectorizer.transform(r.text));
    ys.push_back(r.polarity == Polarity::kPositive ? 1 : -1);
  }
  HingeConfig hinge = cfg.hinge;
  hinge.seed = per_venue_seed(cfg.hinge.seed, venue_index);
  return train_hinge_classifier(xs, ys, vectorizer.vocabulary_size(), hinge);
}

ReviewSimilarityModel ReviewSimilarityModel::fit(
    const Dataset& dataset, const ReviewSimilarityConfig& cfg) {
  std::vector<std::string> corpus;
  for (const Venue& v : dataset.venues()) {
    for (const Review& r : v.reviews) corpus.push_back(r.text);
  }
  ReviewSimilarityModel model;
  model.clip_ = cfg.clip;
  model.vectorizer_ = TfidfVectorizer::fit(corpus, cfg.vocab_cap);
  model.classifiers_.reserve(dataset.n_venues());
  for (std::size_t i = 0; i < dataset.n_venues(); ++i) {
    model.classifiers_.push_back(
        train_review_classifier(i, dataset, model.vectorizer_, cfg));
  }
  return model;
}

double ReviewSimilarityModel::similarity(std::size_t i, const Venue& b) const {
  const LinearClassifier& clf = classifiers_.at(i);
  if (clf.degenerate || b.reviews.empty()) return 0.0;
  double sum = 0.0;
  for (const Review& r : b.reviews) {
    sum += clf.decision(vectorizer_.transform(r.text));
  }
  const double mean = sum / static_cast<double>(b.reviews.size());
  return std::clamp(mean, -clip_, clip_);
}

ReviewSimilarityModel ReviewSimilarityModel::from_parts(
    TfidfVectorizer vectorizer, std::vector<LinearClassifier> clfs,
    double clip) {
  ReviewSimilarityModel model;
  model.vectorizer_ = std::move(vectorizer);
  model.classifiers_ = std::move(clfs);
  model.clip_ = clip;
  return model;
}

SimilarityMatrix build_geo_matrix(const Dataset& dataset) {
  const std::size_t m = dataset.n_venues();
  SimilarityMatrix s = SimilarityMatrix::zeros(SimilarityKind::kGeo, m, true);
  for (std::size_t i = 0; i < m; ++i) {
    s.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = geo_similarity(dataset.venues()[i], dataset.venues()[j]);
      s.at(i, j) = v;
      s.at(j, i) = v;
    }
  }
  return s;
}

SimilarityMatrix build_category_matrix(const Dataset& dataset) {
  const std::size_t m = dataset.n_venues();
  SimilarityMatrix s =
      SimilarityMatrix::zeros(SimilarityKind::kCategory, m, true);
  for (std::size_t i = 0; i < m; ++i) {
    s.at(i, i) = category_similarity(dataset.venues()[i], dataset.venues()[i]);
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v =
          category_similarity(dataset.venues()[i], dataset.venues()[j]);
      s.at(i, j) = v;
      s.at(j, i) = v;
    }
  }
  return s;
}

SimilarityMatrix build_review_matrix(const Dataset& dataset,
                                     const ReviewSimilarityModel& model) {
  const std::size_t m = dataset.n_venues();
  SimilarityMatrix s =
      SimilarityMatrix::zeros(SimilarityKind::kReview, m, false);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      s.at(i, j) = model.similarity(i, dataset.venues()[j]);
    }
  }
  return s;
}

SimilarityStack build_stack(const Dataset& dataset,
                            const std::vector<double>& alphas,
                            const ReviewSimilarityConfig& cfg,
                            ReviewSimilarityModel* fitted_model) {
  if (alphas.size() != 3) {
    throw DataError("build_stack expects three weights (geo, review, "
                    "category), got " + std::to_string(alphas.size()));
  }
  ReviewSimilarityModel model = ReviewSimilarityModel::fit(dataset, cfg);
  SimilarityStack stack;
  stack.matrices.push_back(build_geo_matrix(dataset));
  stack.matrices.push_back(build_review_matrix(dataset, model));
  stack.matrices.push_back(build_category_matrix(dataset));
  stack.weights = alphas;
  stack.validate();
  if (fitted_model != nullptr) *fitted_model = std::move(model);
  return stack;
}

}  // namespace crmls
