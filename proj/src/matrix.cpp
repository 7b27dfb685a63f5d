#include "lpa/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace lpa {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("DenseMatrix: empty shape " +
                                shape_str(rows, cols) + " is not allowed");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  check_shape(rows, cols);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_shape(rows, cols);
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument(
        "DenseMatrix: data length " + std::to_string(data_.size()) +
        " does not match shape " + shape_str(rows_, cols_));
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  check_shape(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw std::invalid_argument("DenseMatrix: ragged initializer rows");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

DenseVector::DenseVector(std::size_t len) : data_(len, 0.0) {
  if (len == 0) throw std::invalid_argument("DenseVector: empty length");
}

DenseVector::DenseVector(std::vector<double> data) : data_(std::move(data)) {
  if (data_.empty()) throw std::invalid_argument("DenseVector: empty length");
}

DenseVector::DenseVector(std::initializer_list<double> values)
    : data_(values) {
  if (data_.empty()) throw std::invalid_argument("DenseVector: empty length");
}

bool DenseVector::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: incompatible shapes " +
                                shape_str(a.rows(), a.cols()) + " * " +
                                shape_str(b.rows(), b.cols()));
  }
  DenseMatrix out(a.rows(), b.cols());
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

DenseVector matvec(const DenseMatrix& a, const DenseVector& x) {
  if (a.cols() != x.len()) {
    throw std::invalid_argument("matvec: incompatible shapes " +
                                shape_str(a.rows(), a.cols()) + " * " +
                                std::to_string(x.len()));
  }
  DenseVector out(a.rows());
  matvec_into(a, x.data().data(), out.data().data());
  return out;
}

void matvec_into(const DenseMatrix& a, const double* x, double* out) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const double* m = a.data().data();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = m + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
}

void matvec_transpose_into(const DenseMatrix& a, const double* y, double* out) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const double* m = a.data().data();
  for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = m + r * cols;
    const double yr = y[r];
    for (std::size_t c = 0; c < cols; ++c) out[c] += row[c] * yr;
  }
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.data() == b.data();
}

bool operator==(const DenseVector& a, const DenseVector& b) {
  return a.data() == b.data();
}

namespace {

double relative_error_impl(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double scale = 1.0;
  for (double v : a) scale = std::max(scale, std::fabs(v));
  for (double v : b) scale = std::max(scale, std::fabs(v));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  }
  return worst / scale;
}

}  // namespace

double relative_error(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("relative_error: shape mismatch " +
                                shape_str(a.rows(), a.cols()) + " vs " +
                                shape_str(b.rows(), b.cols()));
  }
  return relative_error_impl(a.data(), b.data());
}

double relative_error(const DenseVector& a, const DenseVector& b) {
  if (a.len() != b.len()) {
    throw std::invalid_argument("relative_error: length mismatch " +
                                std::to_string(a.len()) + " vs " +
                                std::to_string(b.len()));
  }
  return relative_error_impl(a.data(), b.data());
}

}  // namespace lpa
