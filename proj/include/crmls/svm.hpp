#pragma once

#include <cstdint>
#include <vector>

#include "crmls/text.hpp"

namespace crmls {

struct HingeConfig {
  int epochs = 20;
  double l2 = 1e-4;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
};

// Linear decision function w.x + b. A linear-kernel SVM's decision
// function has exactly this form; training minimizes hinge loss with an
// L2 penalty by seeded stochastic subgradient descent.
struct LinearClassifier {
  std::vector<std::pair<int, double>> weights;  // sparse, sorted by index
  double bias = 0.0;
  bool degenerate = false;  // lacked examples of both classes

  double decision(const SparseVector& x) const;
};

// labels are +1 / -1. Marks the classifier degenerate (decision == 0)
// unless both classes are present.
LinearClassifier train_hinge_classifier(const std::vector<SparseVector>& xs,
                                        const std::vector<int>& labels,
                                        std::size_t dim,
                                        const HingeConfig& cfg);

}  // namespace crmls
