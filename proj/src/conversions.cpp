#include "lpa/conversions.hpp"

#include <algorithm>
#include <stdexcept>

#include "lpa/rng.hpp"

namespace lpa {

DenseVector vec(const DenseMatrix& m) {
  DenseVector out(m.rows() * m.cols());
  std::size_t k = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      out[k++] = m(i, j);
    }
  }
  return out;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      const std::size_t r0 = i * b.rows();
      const std::size_t c0 = j * b.cols();
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(r0 + k, c0 + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

namespace {

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(j, i) = m(i, j);
    }
  }
  return out;
}

}  // namespace

DenseMatrix right_mul_conversion(const DenseMatrix& w, std::size_t m) {
  if (m < 1) {
    throw std::invalid_argument("right_mul_conversion: m must be >= 1");
  }
  return kron(transpose(w), DenseMatrix::identity(m));
}

DenseMatrix left_mul_conversion(const DenseMatrix& w, std::size_t n) {
  if (n < 1) {
    throw std::invalid_argument("left_mul_conversion: n must be >= 1");
  }
  return kron(DenseMatrix::identity(n), w);
}

DenseMatrix bidirectional_conversion(const DenseMatrix& wl,
                                     const DenseMatrix& wr) {
  return kron(transpose(wr), wl);
}

DenseMatrix fused_readout_chain(std::span<const DenseMatrix> projections,
                                const DenseMatrix& readout) {
  for (std::size_t i = 0; i + 1 < projections.size(); ++i) {
    if (projections[i + 1].cols() != projections[i].rows()) {
      throw std::invalid_argument(
          "fused_readout_chain: projection " + std::to_string(i + 1) +
          " expects input of length " +
          std::to_string(projections[i + 1].cols()) + " but link " +
          std::to_string(i) + " produces " +
          std::to_string(projections[i].rows()));
    }
  }
  if (!projections.empty() &&
      readout.cols() != projections.back().rows()) {
    throw std::invalid_argument(
        "fused_readout_chain: readout expects input of length " +
        std::to_string(readout.cols()) + " but link " +
        std::to_string(projections.size() - 1) + " produces " +
        std::to_string(projections.back().rows()));
  }
  DenseMatrix fused = readout;
  for (std::size_t i = projections.size(); i-- > 0;) {
    fused = matmul(fused, projections[i]);
  }
  return fused;
}

namespace {

DenseMatrix random_matrix(Xoshiro256pp& rng, std::size_t rows,
                          std::size_t cols) {
  DenseMatrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform(-1.0, 1.0);
  return m;
}

std::size_t random_dim(Xoshiro256pp& rng) { return 1 + rng.next_below(8); }

}  // namespace

IdentityReport run_identity_suite(std::size_t trials, std::uint64_t seed) {
  IdentityReport report;
  report.families = {
      {"vec(ABC) == (C^T kron A) vec(B)", 0.0},
      {"right: vec(XW) == (W^T kron I_m) vec(X)", 0.0},
      {"left: vec(WX) == (I_n kron W) vec(X)", 0.0},
      {"bidirectional: vec(WL X WR) == (WR^T kron WL) vec(X)", 0.0},
      {"mixed product: (A kron B)(C kron D) == (AC) kron (BD)", 0.0},
      {"kron(I_m, I_n) == I_mn", 0.0},
  };
  Xoshiro256pp rng(seed);

  for (std::size_t t = 0; t < trials; ++t) {
    // vec(ABC) == (C^T kron A) vec(B)
    {
      const std::size_t m = random_dim(rng), n = random_dim(rng);
      const std::size_t p = random_dim(rng), q = random_dim(rng);
      const DenseMatrix a = random_matrix(rng, m, n);
      const DenseMatrix b = random_matrix(rng, n, p);
      const DenseMatrix c = random_matrix(rng, p, q);
      const DenseVector lhs = vec(matmul(matmul(a, b), c));
      const DenseVector rhs = matvec(kron(transpose(c), a), vec(b));
      report.families[0].worst_rel_error = std::max(
          report.families[0].worst_rel_error, relative_error(lhs, rhs));
    }
    // vec(XW) == right_mul_conversion(W, m) vec(X)
    {
      const std::size_t m = random_dim(rng), n = random_dim(rng);
      const std::size_t p = random_dim(rng);
      const DenseMatrix x = random_matrix(rng, m, n);
      const DenseMatrix w = random_matrix(rng, n, p);
      const DenseVector lhs = vec(matmul(x, w));
      const DenseVector rhs = matvec(right_mul_conversion(w, m), vec(x));
      report.families[1].worst_rel_error = std::max(
          report.families[1].worst_rel_error, relative_error(lhs, rhs));
    }
    // vec(WX) == left_mul_conversion(W, n) vec(X)
    {
      const std::size_t m = random_dim(rng), n = random_dim(rng);
      const std::size_t p = random_dim(rng);
      const DenseMatrix w = random_matrix(rng, p, m);
      const DenseMatrix x = random_matrix(rng, m, n);
      const DenseVector lhs = vec(matmul(w, x));
      const DenseVector rhs = matvec(left_mul_conversion(w, n), vec(x));
      report.families[2].worst_rel_error = std::max(
          report.families[2].worst_rel_error, relative_error(lhs, rhs));
    }
    // vec(WL X WR) == bidirectional_conversion(WL, WR) vec(X)
    {
      const std::size_t m = random_dim(rng), n = random_dim(rng);
      const std::size_t p = random_dim(rng), q = random_dim(rng);
      const DenseMatrix wl = random_matrix(rng, m, n);
      const DenseMatrix x = random_matrix(rng, n, p);
      const DenseMatrix wr = random_matrix(rng, p, q);
      const DenseVector lhs = vec(matmul(matmul(wl, x), wr));
      const DenseVector rhs = matvec(bidirectional_conversion(wl, wr), vec(x));
      report.families[3].worst_rel_error = std::max(
          report.families[3].worst_rel_error, relative_error(lhs, rhs));
    }
    // (A kron B)(C kron D) == (AC) kron (BD)
    {
      const std::size_t m = random_dim(rng), n = random_dim(rng);
      const std::size_t p = random_dim(rng), q = random_dim(rng);
      const std::size_t r = random_dim(rng), s = random_dim(rng);
      const DenseMatrix a = random_matrix(rng, m, n);
      const DenseMatrix b = random_matrix(rng, p, q);
      const DenseMatrix c = random_matrix(rng, n, r);
      const DenseMatrix d = random_matrix(rng, q, s);
      const DenseMatrix lhs = matmul(kron(a, b), kron(c, d));
      const DenseMatrix rhs = kron(matmul(a, c), matmul(b, d));
      report.families[4].worst_rel_error = std::max(
          report.families[4].worst_rel_error, relative_error(lhs, rhs));
    }
    // kron(I_m, I_n) == I_mn, exact
    {
      const std::size_t m = random_dim(rng), n = random_dim(rng);
      const DenseMatrix lhs =
          kron(DenseMatrix::identity(m), DenseMatrix::identity(n));
      const DenseMatrix rhs = DenseMatrix::identity(m * n);
      report.families[5].worst_rel_error =
          std::max(report.families[5].worst_rel_error,
                   lhs == rhs ? 0.0 : relative_error(lhs, rhs));
    }
  }

  report.worst_rel_error = 0.0;
  for (const auto& f : report.families) {
    report.worst_rel_error = std::max(report.worst_rel_error,
                                      f.worst_rel_error);
  }
  return report;
}

}  // namespace lpa
