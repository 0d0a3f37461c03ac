#include "crmls/trainer.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>

#include "crmls/errors.hpp"

namespace crmls {

void Hyperparams::validate() const {
  if (d < 1) throw DataError("hyperparams: d must be >= 1");
  if (!(gamma > 0.0)) throw DataError("hyperparams: gamma must be > 0");
  if (!(lambda >= 0.0)) throw DataError("hyperparams: lambda must be >= 0");
  if (!(epsilon > 0.0)) throw DataError("hyperparams: epsilon must be > 0");
  if (max_iter < 1) throw DataError("hyperparams: max_iter must be >= 1");
  for (double a : alphas) {
    if (!(a >= 0.0)) throw DataError("hyperparams: alphas must be >= 0");
  }
}

void LatentModel::reindex() {
  user_index.clear();
  venue_index.clear();
  for (std::size_t i = 0; i < user_ids.size(); ++i) {
    user_index.emplace(user_ids[i], i);
  }
  for (std::size_t j = 0; j < venue_ids.size(); ++j) {
    venue_index.emplace(venue_ids[j], j);
  }
}

PairCoefficients PairCoefficients::from_stack(const SimilarityStack& stack) {
  stack.validate();
  PairCoefficients c;
  c.m_ = stack.m();
  c.values_.assign(c.m_ * c.m_, 0.0);
  for (std::size_t z = 0; z < stack.size(); ++z) {
    const double alpha = stack.weights[z];
    const SimilarityMatrix& s = stack.matrices[z];
    for (std::size_t idx = 0; idx < c.values_.size(); ++idx) {
      c.values_[idx] += alpha * std::exp(-std::abs(s.values[idx]));
    }
  }
  return c;
}

double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

namespace {

// 1 / (1 + exp(d)), i.e. sigma(-d), evaluated without overflow.
double inverse_theta(double d) {
  if (d >= 0.0) {
    const double e = std::exp(-d);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(d));
}

bool user_is_active(const PreferenceSets& prefs, std::size_t i) {
  return !prefs.positives[i].empty() && !prefs.negatives[i].empty();
}

double objective_impl(const Matrix& U, const Matrix& V,
                      const PreferenceSets& prefs,
                      const PairCoefficients& coeffs, double lambda) {
  double theta = 0.0;
  for (std::size_t i = 0; i < prefs.n_users; ++i) {
    if (!user_is_active(prefs, i)) continue;
    const auto u_i = U.col(i);
    const auto& pos = prefs.positives[i];
    const auto& neg = prefs.negatives[i];
    const double n_i = static_cast<double>(neg.size());
    double user_sum = 0.0;
    for (int j : neg) {
      const double score_j = dot(u_i, V.col(j));
      double h = 0.0;
      for (int k : pos) {
        const double margin =
            coeffs.at(k, j) * (dot(u_i, V.col(k)) - score_j);
        h += softplus(-margin);
      }
      user_sum += h * h;
    }
    theta += user_sum / n_i;
  }
  theta += 0.5 * lambda *
           (U.squared_frobenius_norm() + V.squared_frobenius_norm());
  return theta;
}

void grad_u_impl(const Matrix& U, const Matrix& V, const PreferenceSets& prefs,
                 const PairCoefficients& coeffs, double lambda,
                 Matrix& grad_u) {
  grad_u = Matrix(U.rows(), U.cols());
  for (std::size_t idx = 0; idx < grad_u.data().size(); ++idx) {
    grad_u.data()[idx] = lambda * U.data()[idx];
  }
  const std::size_t d = U.rows();
  std::vector<double> sig;
  for (std::size_t i = 0; i < prefs.n_users; ++i) {
    if (!user_is_active(prefs, i)) continue;
    const auto u_i = U.col(i);
    auto g_i = grad_u.col(i);
    const auto& pos = prefs.positives[i];
    const auto& neg = prefs.negatives[i];
    const double n_i = static_cast<double>(neg.size());
    sig.resize(pos.size());
    for (int j : neg) {
      const double score_j = dot(u_i, V.col(j));
      double h = 0.0;
      for (std::size_t p = 0; p < pos.size(); ++p) {
        const int k = pos[p];
        const double margin = coeffs.at(k, j) * (dot(u_i, V.col(k)) - score_j);
        h += softplus(-margin);
        sig[p] = inverse_theta(margin);
      }
      const double factor = 2.0 * h / n_i;
      const auto v_j = V.col(j);
      for (std::size_t p = 0; p < pos.size(); ++p) {
        const int k = pos[p];
        const double g = factor * sig[p] * coeffs.at(k, j);
        const auto v_k = V.col(k);
        for (std::size_t r = 0; r < d; ++r) {
          g_i[r] += g * (v_j[r] - v_k[r]);
        }
      }
    }
  }
}

void grad_v_impl(const Matrix& U, const Matrix& V, const PreferenceSets& prefs,
                 const PairCoefficients& coeffs, double lambda,
                 Matrix& grad_v) {
  grad_v = Matrix(V.rows(), V.cols());
  for (std::size_t idx = 0; idx < grad_v.data().size(); ++idx) {
    grad_v.data()[idx] = lambda * V.data()[idx];
  }
  const std::size_t d = V.rows();
  std::vector<double> sig;
  for (std::size_t i = 0; i < prefs.n_users; ++i) {
    if (!user_is_active(prefs, i)) continue;
    const auto u_i = U.col(i);
    const auto& pos = prefs.positives[i];
    const auto& neg = prefs.negatives[i];
    const double n_i = static_cast<double>(neg.size());
    sig.resize(pos.size());
    for (int j : neg) {
      const double score_j = dot(u_i, V.col(j));
      double h = 0.0;
      for (std::size_t p = 0; p < pos.size(); ++p) {
        const int k = pos[p];
        const double margin = coeffs.at(k, j) * (dot(u_i, V.col(k)) - score_j);
        h += softplus(-margin);
        sig[p] = inverse_theta(margin);
      }
      const double factor = 2.0 * h / n_i;
      auto g_j = grad_v.col(j);
      for (std::size_t p = 0; p < pos.size(); ++p) {
        const int k = pos[p];
        const double g = factor * sig[p] * coeffs.at(k, j);
        auto g_k = grad_v.col(k);
        for (std::size_t r = 0; r < d; ++r) {
          g_j[r] += g * u_i[r];
          g_k[r] -= g * u_i[r];
        }
      }
    }
  }
}

void initialize_factors(Matrix& U, Matrix& V, int d, std::uint64_t seed) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(d));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& v : U.data()) v = dist(rng);
  for (double& v : V.data()) v = dist(rng);
}

}  // namespace

double delta_margin(std::span<const double> u_i, std::span<const double> v_k,
                    std::span<const double> v_j, const SimilarityStack& stack,
                    std::size_t k, std::size_t j) {
  double coeff = 0.0;
  for (std::size_t z = 0; z < stack.size(); ++z) {
    coeff += stack.weights[z] *
             std::exp(-std::abs(stack.matrices[z].at(k, j)));
  }
  return coeff * (dot(u_i, v_k) - dot(u_i, v_j));
}

double surrogate_height(std::span<const double> u_i, const Matrix& V,
                        std::span<const int> positives, int j,
                        const PairCoefficients& coeffs) {
  const double score_j = dot(u_i, V.col(j));
  double h = 0.0;
  for (int k : positives) {
    const double margin = coeffs.at(k, j) * (dot(u_i, V.col(k)) - score_j);
    h += softplus(-margin);
  }
  return h;
}

double objective(const Matrix& U, const Matrix& V, const PreferenceSets& prefs,
                 const SimilarityStack& stack, const Hyperparams& hp) {
  return objective_impl(U, V, prefs, PairCoefficients::from_stack(stack),
                        hp.lambda);
}

void gradients(const Matrix& U, const Matrix& V, const PreferenceSets& prefs,
               const SimilarityStack& stack, const Hyperparams& hp,
               Matrix& grad_u, Matrix& grad_v) {
  const PairCoefficients coeffs = PairCoefficients::from_stack(stack);
  grad_u_impl(U, V, prefs, coeffs, hp.lambda, grad_u);
  grad_v_impl(U, V, prefs, coeffs, hp.lambda, grad_v);
}

LatentModel train(const PreferenceSets& prefs, const SimilarityStack& stack,
                  const Hyperparams& hp, std::ostream* log) {
  hp.validate();
  stack.validate();
  if (stack.m() != prefs.n_venues) {
    throw DataError("similarity stack covers " + std::to_string(stack.m()) +
                    " venues but the dataset has " +
                    std::to_string(prefs.n_venues));
  }
  if (stack.weights.size() != hp.alphas.size() ||
      stack.weights != hp.alphas) {
    // The stack owns the weights actually used; hyperparams record them.
  }

  const PairCoefficients coeffs = PairCoefficients::from_stack(stack);
  const std::size_t d = static_cast<std::size_t>(hp.d);

  LatentModel model;
  model.hp = hp;
  model.hp.alphas = stack.weights;
  model.U = Matrix(d, prefs.n_users);
  model.V = Matrix(d, prefs.n_venues);
  initialize_factors(model.U, model.V, hp.d, hp.seed);

  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t_start]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t_start)
        .count();
  };

  double theta_next = objective_impl(model.U, model.V, prefs, coeffs,
                                     hp.lambda);
  double theta_prev = theta_next / 2.0;
  model.loss_trace.push_back(theta_next);
  if (log != nullptr) {
    *log << 0 << '\t' << theta_next << '\t' << elapsed_ms() << '\n';
  }
  if (!std::isfinite(theta_next)) {
    throw NumericalError("non-finite objective at initialization");
  }

  Matrix grad_u, grad_v;
  int t = 0;
  while (std::abs(theta_next - theta_prev) > hp.epsilon && t < hp.max_iter) {
    ++t;
    grad_u_impl(model.U, model.V, prefs, coeffs, hp.lambda, grad_u);
    for (std::size_t idx = 0; idx < model.U.data().size(); ++idx) {
      model.U.data()[idx] -= hp.gamma * grad_u.data()[idx];
    }
    // V steps against the already-advanced U.
    grad_v_impl(model.U, model.V, prefs, coeffs, hp.lambda, grad_v);
    for (std::size_t idx = 0; idx < model.V.data().size(); ++idx) {
      model.V.data()[idx] -= hp.gamma * grad_v.data()[idx];
    }
    theta_prev = theta_next;
    theta_next = objective_impl(model.U, model.V, prefs, coeffs, hp.lambda);
    model.loss_trace.push_back(theta_next);
    if (log != nullptr) {
      *log << t << '\t' << theta_next << '\t' << elapsed_ms() << '\n';
    }
    if (!std::isfinite(theta_next)) {
      throw NumericalError("non-finite objective at iteration " +
                           std::to_string(t));
    }
  }
  return model;
}

LatentModel train(const Dataset& dataset, std::span<const Rating> ratings,
                  const SimilarityStack& stack, const Hyperparams& hp,
                  std::ostream* log) {
  const PreferenceSets prefs = PreferenceSets::from_ratings(dataset, ratings);
  LatentModel model = train(prefs, stack, hp, log);
  model.user_ids = dataset.user_ids();
  model.venue_ids.reserve(dataset.n_venues());
  for (const Venue& v : dataset.venues()) model.venue_ids.push_back(v.id);
  model.reindex();
  return model;
}

}  // namespace crmls
