#pragma once

#include "nucpath/impulse_response.hpp"

#include <Eigen/Core>

namespace nucpath {

/// Relative singular-value cutoff used when the rank of a Hankel matrix
/// has to be decided numerically.
inline constexpr double kDefaultRankTol = 1e-6;

/// Square Hankel matrix H(g) with entry (i, j) = g_{i+j} (0-based). The
/// generating vector is kept next to the dense entries.
class HankelMatrix {
 public:
  explicit HankelMatrix(const ImpulseResponse& g);

  const Eigen::MatrixXd& matrix() const { return entries_; }
  const Eigen::VectorXd& generator() const { return generator_; }
  Eigen::Index n() const { return entries_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }

 private:
  Eigen::VectorXd generator_;
  Eigen::MatrixXd entries_;
};

/// Truncated SVD M ≈ U diag(S) Vᵀ keeping only σ_j > rank_tol · σ_1.
struct CompactSvd {
  Eigen::MatrixXd U;
  Eigen::VectorXd S;
  Eigen::MatrixXd V;

  Eigen::Index rank() const { return S.size(); }
};

HankelMatrix hankel_embed(const ImpulseResponse& g);

/// Raw-vector overload; rejects even lengths instead of padding.
HankelMatrix hankel_embed(const Eigen::VectorXd& g);

/// Adjoint of the Hankel embedding: sums of M over each anti-diagonal.
/// For M = UVᵀ + W this is the vector with entries tr[H_k M].
Eigen::VectorXd hankel_adjoint(const Eigen::MatrixXd& M);

/// Number of times g_k appears in an n×n Hankel matrix, min(k, 2n-k).
Eigen::VectorXd multiplicities(Eigen::Index n);

/// Hankel matrix of the k-th unit vector (1-based k, 1 ≤ k ≤ 2n-1).
HankelMatrix basis_matrix(Eigen::Index k, Eigen::Index n);

double nuclear_norm(const Eigen::MatrixXd& M);

/// All singular values, descending.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& M);

/// Throws std::invalid_argument unless 0 < rank_tol < 1 and NumericalError
/// when the decomposition produces non-finite output.
CompactSvd compact_svd(const Eigen::MatrixXd& M,
                       double rank_tol = kDefaultRankTol);

}  // namespace nucpath
