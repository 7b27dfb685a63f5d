#ifndef LPA_MATRIX_HPP
#define LPA_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace lpa {

/// Dense row-major matrix of 64-bit floats. Empty shapes are rejected at
/// construction; all operations on matrices are pure free functions.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

class DenseVector {
 public:
  explicit DenseVector(std::size_t len);
  explicit DenseVector(std::vector<double> data);
  DenseVector(std::initializer_list<double> values);

  std::size_t len() const { return data_.size(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const;

 private:
  std::vector<double> data_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseVector matvec(const DenseMatrix& a, const DenseVector& x);

/// out[r] = sum_c a(r,c) * x[c]; out must have length a.rows().
void matvec_into(const DenseMatrix& a, const double* x, double* out);
/// out[c] = sum_r a(r,c) * y[r] (transpose product); out length a.cols().
void matvec_transpose_into(const DenseMatrix& a, const double* y, double* out);

bool operator==(const DenseMatrix& a, const DenseMatrix& b);
bool operator==(const DenseVector& a, const DenseVector& b);

/// max_i |a_i - b_i| / max(1, |a|_inf, |b|_inf); requires equal shapes.
double relative_error(const DenseMatrix& a, const DenseMatrix& b);
double relative_error(const DenseVector& a, const DenseVector& b);

}  // namespace lpa

#endif  // LPA_MATRIX_HPP
