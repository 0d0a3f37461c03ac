#include "crmls/svm.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <random>

namespace crmls {

double LinearClassifier::decision(const SparseVector& x) const {
  if (degenerate) return 0.0;
  double s = bias;
  auto wit = weights.begin();
  for (const auto& [idx, val] : x.entries) {
    while (wit != weights.end() && wit->first < idx) ++wit;
    if (wit == weights.end()) break;
    if (wit->first == idx) s += wit->second * val;
  }
  return s;
}

LinearClassifier train_hinge_classifier(const std::vector<SparseVector>& xs,
                                        const std::vector<int>& labels,
                                        std::size_t dim,
                                        const HingeConfig& cfg) {
  assert(xs.size() == labels.size());
  LinearClassifier clf;

  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y > 0) has_pos = true;
    if (y < 0) has_neg = true;
  }
  if (!has_pos || !has_neg) {
    clf.degenerate = true;
    return clf;
  }

  std::vector<double> w(dim, 0.0);
  double b = 0.0;
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(cfg.seed);
  const double eta = cfg.learning_rate;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t s : order) {
      const SparseVector& x = xs[s];
      const double y = labels[s] > 0 ? 1.0 : -1.0;
      const double margin = y * (sparse_dot(x, w) + b);
      // L2 shrinkage on every step; hinge subgradient only inside margin.
      // Bias is not penalized.
      const double shrink = 1.0 - eta * cfg.l2;
      for (auto& wi : w) wi *= shrink;
      if (margin < 1.0) {
        for (const auto& [idx, val] : x.entries) w[idx] += eta * y * val;
        b += eta * y;
      }
    }
  }

  clf.bias = b;
  for (std::size_t i = 0; i < dim; ++i) {
    if (w[i] != 0.0) clf.weights.emplace_back(static_cast<int>(i), w[i]);
  }
  return clf;
}

}  // namespace crmls
