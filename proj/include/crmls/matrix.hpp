#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace crmls {

// Dense column-major matrix. Latent factor matrices are d x n with one
// column per user/venue, so a column is a contiguous factor vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[c * rows_ + r];
  }
  double operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[c * rows_ + r];
  }

  std::span<double> col(std::size_t c) {
    assert(c < cols_);
    return {data_.data() + c * rows_, rows_};
  }
  std::span<const double> col(std::size_t c) const {
    assert(c < cols_);
    return {data_.data() + c * rows_, rows_};
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double squared_frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace crmls
