#include "nucpath/solver.hpp"

#include "nucpath/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace nucpath {

void SolverOptions::validate() const {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(primal_tol > 0.0) || !(dual_tol > 0.0)) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) {
    throw std::invalid_argument("rank_tol must lie in (0, 1)");
  }
}

Eigen::VectorXd project_simplex_l1(const Eigen::VectorXd& s, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if ((s.array() < 0.0).any()) {
    throw std::invalid_argument("project_simplex_l1 expects nonnegative input");
  }
  if (s.sum() <= radius) return s;

  // Sort-based exact threshold: θ = (Σ_{j≤ρ} u_j − radius) / ρ for the
  // largest ρ with u_ρ > θ.
  std::vector<double> u(s.data(), s.data() + s.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double candidate = (cumsum - radius) / static_cast<double>(j + 1);
    if (u[j] > candidate) theta = candidate;
  }
  return (s.array() - theta).max(0.0).matrix();
}

Eigen::MatrixXd project_nuclear_ball(const Eigen::MatrixXd& M, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!s.allFinite()) throw NumericalError("SVD produced non-finite values");
  if (s.sum() <= radius) return M;
  const Eigen::VectorXd shrunk = project_simplex_l1(s, radius);
  return svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
}

Eigen::MatrixXd project_nuclear_ball_symmetric(const Eigen::MatrixXd& M,
                                               double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  const Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("symmetric eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::VectorXd magnitude = lambda.cwiseAbs();
  if (magnitude.sum() <= radius) return sym;
  const Eigen::VectorXd shrunk = project_simplex_l1(magnitude, radius);
  Eigen::VectorXd signed_values(lambda.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    signed_values[j] = lambda[j] < 0.0 ? -shrunk[j] : shrunk[j];
  }
  const Eigen::MatrixXd& Q = eig.eigenvectors();
  return Q * signed_values.asDiagonal() * Q.transpose();
}

namespace {

SolveResult finish(const ImpulseResponse& g_o, double t, Eigen::VectorXd model) {
  SolveResult out;
  out.t = t;
  double nuc = nuclear_norm(hankel_embed(model).matrix());
  if (nuc > t) {
    model *= t / nuc;
    nuc = nuclear_norm(hankel_embed(model).matrix());
  }
  out.g_tilde = ImpulseResponse(model / t);
  out.nuclear_norm_value = nuc / t;
  out.objective = (t * out.g_tilde.values() - g_o.values()).squaredNorm();
  return out;
}

}  // namespace

SolveResult solve_constrained(const ImpulseResponse& g_o, double t,
                              const SolverOptions& opts) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("solve_constrained: t must be positive and finite");
  }
  opts.validate();

  const Eigen::Index n = g_o.n();
  const HankelMatrix H_o = hankel_embed(g_o);

  // Inactive constraint: the data itself is feasible.
  if (nuclear_norm(H_o.matrix()) <= t) {
    SolveResult out = finish(g_o, t, g_o.values());
    out.converged = true;
    out.multiplier = Eigen::MatrixXd::Zero(n, n);
    return out;
  }

  const Eigen::ArrayXd w = multiplicities(n).array();
  const Eigen::VectorXd& target = g_o.values();
  const double scale = 1.0 + g_o.norm();
  const double primal_thr = opts.primal_tol * scale;
  const double dual_thr = opts.dual_tol * scale;

  double rho = opts.rho;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(g_o.k_max());
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd Lambda = Eigen::MatrixXd::Zero(n, n);  // scaled dual

  double primal = 0.0;
  double dual = 0.0;
  int it = 0;
  bool converged = false;
  while (it < opts.max_iters) {
    ++it;
    g = ((2.0 * target + rho * hankel_adjoint(X - Lambda)).array() /
         (2.0 + rho * w))
            .matrix();
    const Eigen::MatrixXd Hg = hankel_embed(g).matrix();
    const Eigen::MatrixXd X_prev = X;
    X = project_nuclear_ball_symmetric(Hg + Lambda, t);
    Lambda += Hg - X;

    primal = (Hg - X).norm();
    dual = rho * (X - X_prev).norm();
    if (primal <= primal_thr && dual <= dual_thr) {
      converged = true;
      break;
    }
    if (opts.adaptive_rho && it % 10 == 0) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        Lambda /= 2.0;
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        Lambda *= 2.0;
      }
    }
  }

  SolveResult out = finish(g_o, t, g);
  out.iterations = it;
  out.primal_residual = primal;
  out.dual_residual = dual;
  out.converged = converged;
  out.multiplier = rho * Lambda;
  return out;
}

}  // namespace nucpath
