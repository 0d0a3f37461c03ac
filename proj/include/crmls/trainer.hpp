#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "crmls/dataset.hpp"
#include "crmls/matrix.hpp"
#include "crmls/similarity.hpp"

namespace crmls {

struct Hyperparams {
  int d = 90;
  double gamma = 1e-4;
  double lambda = 1.0;
  std::vector<double> alphas = {0.5, 0.2, 0.3};
  double epsilon = 1e-4;
  int max_iter = 1000;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const Hyperparams& other) const = default;
};

struct LatentModel {
  Matrix U;  // d x n, column per user
  Matrix V;  // d x m, column per venue
  Hyperparams hp;
  std::vector<double> loss_trace;  // objective per iteration, initial first
  std::vector<std::string> user_ids;   // index -> id
  std::vector<std::string> venue_ids;  // index -> id
  std::unordered_map<std::string, std::size_t> user_index;
  std::unordered_map<std::string, std::size_t> venue_index;

  // Rebuilds the id -> index maps from the id vectors.
  void reindex();
};

// Pairwise attenuation coefficients c(k,j) = sum_z alpha_z / exp(|S_z(k,j)|).
// delta factors as c(k,j) * u_i.(v_k - v_j), so the stack collapses to one
// m x m coefficient table that is constant throughout training.
class PairCoefficients {
 public:
  PairCoefficients() = default;
  static PairCoefficients from_stack(const SimilarityStack& stack);

  double at(std::size_t k, std::size_t j) const { return values_[k * m_ + j]; }
  std::size_t m() const { return m_; }

 private:
  std::size_t m_ = 0;
  std::vector<double> values_;
};

// log(1 + exp(x)) without overflow.
double softplus(double x);

// Similarity-attenuated score margin between a relevant venue k and an
// irrelevant venue j.
double delta_margin(std::span<const double> u_i, std::span<const double> v_k,
                    std::span<const double> v_j, const SimilarityStack& stack,
                    std::size_t k, std::size_t j);

// Sum of logistic losses of the margins against every relevant venue;
// 0 when there are none.
double surrogate_height(std::span<const double> u_i, const Matrix& V,
                        std::span<const int> positives, int j,
                        const PairCoefficients& coeffs);

// Squared surrogate heights, normalized per user by its irrelevant count,
// plus (lambda/2)(|U|^2 + |V|^2). Users missing either preference set
// contribute zero.
double objective(const Matrix& U, const Matrix& V, const PreferenceSets& prefs,
                 const SimilarityStack& stack, const Hyperparams& hp);

// Analytic gradient of `objective` for every user and venue column.
void gradients(const Matrix& U, const Matrix& V, const PreferenceSets& prefs,
               const SimilarityStack& stack, const Hyperparams& hp,
               Matrix& grad_u, Matrix& grad_v);

// Alternating full-batch descent: every u_i steps against (U^t, V^t), then
// every v_j against (U^{t+1}, V^t), until |theta^{t+1} - theta^t| <= epsilon
// or max_iter. U, V start uniform in [-1/sqrt(d), 1/sqrt(d)] from hp.seed.
// Throws NumericalError if the objective stops being finite. The optional
// log stream receives one line per iteration: t, objective, wallclock ms.
LatentModel train(const PreferenceSets& prefs, const SimilarityStack& stack,
                  const Hyperparams& hp, std::ostream* log = nullptr);

// Same, deriving preference sets from a rating subset (typically the train
// part of a split) and carrying the dataset's id maps into the model.
LatentModel train(const Dataset& dataset, std::span<const Rating> ratings,
                  const SimilarityStack& stack, const Hyperparams& hp,
                  std::ostream* log = nullptr);

}  // namespace crmls
