#include "nucpath/hankel.hpp"

#include "nucpath/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nucpath {

HankelMatrix::HankelMatrix(const ImpulseResponse& g)
    : generator_(g.values()), entries_(g.n(), g.n()) {
  const Eigen::Index n = g.n();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      entries_(i, j) = generator_[i + j];
    }
  }
}

HankelMatrix hankel_embed(const ImpulseResponse& g) { return HankelMatrix(g); }

HankelMatrix hankel_embed(const Eigen::VectorXd& g) {
  // ImpulseResponse rejects even lengths; padding is always explicit.
  return HankelMatrix(ImpulseResponse(g));
}

Eigen::VectorXd hankel_adjoint(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw std::invalid_argument("hankel_adjoint expects a non-empty square matrix");
  }
  const Eigen::Index n = M.rows();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n - 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out[i + j] += M(i, j);
    }
  }
  return out;
}

Eigen::VectorXd multiplicities(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("multiplicities: n must be >= 1");
  Eigen::VectorXd w(2 * n - 1);
  for (Eigen::Index k = 1; k <= 2 * n - 1; ++k) {
    w[k - 1] = static_cast<double>(std::min(k, 2 * n - k));
  }
  return w;
}

HankelMatrix basis_matrix(Eigen::Index k, Eigen::Index n) {
  if (n < 1 || k < 1 || k > 2 * n - 1) {
    throw std::invalid_argument("basis_matrix: k=" + std::to_string(k) +
                                " out of range for n=" + std::to_string(n));
  }
  Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * n - 1);
  e[k - 1] = 1.0;
  return HankelMatrix(ImpulseResponse(std::move(e)));
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  Eigen::VectorXd s = svd.singularValues();
  if (!s.allFinite()) throw NumericalError("SVD produced non-finite values");
  return s;
}

double nuclear_norm(const Eigen::MatrixXd& M) { return singular_values(M).sum(); }

CompactSvd compact_svd(const Eigen::MatrixXd& M, double rank_tol) {
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) {
    throw std::invalid_argument("compact_svd: rank_tol must lie in (0, 1)");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!s.allFinite() || !svd.matrixU().allFinite() || !svd.matrixV().allFinite()) {
    throw NumericalError("SVD produced non-finite values");
  }
  Eigen::Index r = 0;
  if (s.size() > 0 && s[0] > 0.0) {
    const double cut = rank_tol * s[0];
    while (r < s.size() && s[r] > cut) ++r;
  }
  CompactSvd out;
  out.U = svd.matrixU().leftCols(r);
  out.S = s.head(r);
  out.V = svd.matrixV().leftCols(r);
  return out;
}

}  // namespace nucpath
