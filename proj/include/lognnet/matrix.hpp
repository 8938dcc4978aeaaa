#pragma once

#include <cstddef>
#include <vector>

namespace lognnet {

// Dense row-major matrix of doubles. Deliberately minimal: the algorithms in
// this library prescribe their own loop orders (summation order changes the
// floating-point result), so a BLAS-style abstraction would get in the way.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

}  // namespace lognnet
