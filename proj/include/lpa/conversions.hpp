#ifndef LPA_CONVERSIONS_HPP
#define LPA_CONVERSIONS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpa/matrix.hpp"

namespace lpa {

/// Column-stacking vectorization: vec(X)[j*m + i] = X(i, j).
DenseVector vec(const DenseMatrix& m);

/// Kronecker product; block (i,j) of the result equals a(i,j) * b.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Matrix-vector form of a right multiplication Y = X*W for X with m rows:
/// returns W' = W^T (x) I_m so that vec(X*W) == W' * vec(X).
DenseMatrix right_mul_conversion(const DenseMatrix& w, std::size_t m);

/// Matrix-vector form of a left multiplication Y = W*X for X with n columns:
/// returns W' = I_n (x) W so that vec(W*X) == W' * vec(X).
DenseMatrix left_mul_conversion(const DenseMatrix& w, std::size_t n);

/// Matrix-vector form of Y = W_L * X * W_R:
/// returns W' = W_R^T (x) W_L so that vec(W_L*X*W_R) == W' * vec(X).
DenseMatrix bidirectional_conversion(const DenseMatrix& wl,
                                     const DenseMatrix& wr);

/// Fuses a linear path into one matrix: projections are applied in order
/// (projections[0] first), the readout last. Applying the result to a state
/// equals applying the chain step by step.
DenseMatrix fused_readout_chain(std::span<const DenseMatrix> projections,
                                const DenseMatrix& readout);

/// Seeded randomized check of the conversion theorems and Kronecker
/// identities. Each family runs `trials` random-shape trials (dimensions up
/// to 8); worst relative error per family is reported.
struct IdentityReport {
  struct Family {
    std::string name;
    double worst_rel_error;
  };
  std::vector<Family> families;
  double worst_rel_error;
};

IdentityReport run_identity_suite(std::size_t trials, std::uint64_t seed);

}  // namespace lpa

#endif  // LPA_CONVERSIONS_HPP
