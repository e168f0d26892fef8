#pragma once

#include "nucpath/hankel.hpp"
#include "nucpath/impulse_response.hpp"

#include <Eigen/Core>

namespace nucpath {

struct SolverOptions {
  /// Splitting penalty; adapted by residual balancing when adaptive_rho.
  double rho = 1.0;
  bool adaptive_rho = true;
  int max_iters = 5000;
  /// Relative tolerances; the stopping thresholds are tol · (1 + ‖g_o‖).
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double rank_tol = kDefaultRankTol;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Outcome of one constrained solve at a fixed level t.
struct SolveResult {
  double t = 0.0;
  /// Normalized optimizer g̃* (the model is t · g̃*).
  ImpulseResponse g_tilde;
  /// ‖t·g̃* − g_o‖².
  double objective = 0.0;
  /// ‖H(g̃*)‖_*, at most 1 after the final feasibility rescale.
  double nuclear_norm_value = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
  /// Constraint multiplier of the splitting (an element of the normal cone
  /// of the nuclear ball at H(t·g̃*)). Zero when the constraint is inactive.
  Eigen::MatrixXd multiplier;

  /// t · g̃*, the un-normalized reduced model.
  Eigen::VectorXd model() const { return t * g_tilde.values(); }
};

/// Euclidean projection of a nonnegative vector onto {x ≥ 0 : Σx ≤ radius}.
Eigen::VectorXd project_simplex_l1(const Eigen::VectorXd& s, double radius);

/// Frobenius-nearest matrix with nuclear norm ≤ radius.
Eigen::MatrixXd project_nuclear_ball(const Eigen::MatrixXd& M, double radius);

/// Same projection for symmetric input, through an eigendecomposition:
/// σ_j = |λ_j| and the signs of λ_j are carried over to the shrunk values.
Eigen::MatrixXd project_nuclear_ball_symmetric(const Eigen::MatrixXd& M,
                                               double radius);

/// Minimizes ‖t·g̃ − g_o‖² subject to ‖H(g̃)‖_* ≤ 1.
///
/// Alternating-direction splitting on the un-normalized model g = t·g̃ with
/// the auxiliary matrix X = H(g):
///   g ← (2 g_o + ρ H*(X − Λ)) ⊘ (2 + ρ w),   w = multiplicities(n)
///   X ← Π_{‖·‖_* ≤ t}(H(g) + Λ)
///   Λ ← Λ + H(g) − X
/// Initialization is all zeros, so the result is deterministic. A result
/// with converged == false carries the last iterate and its residuals.
SolveResult solve_constrained(const ImpulseResponse& g_o, double t,
                              const SolverOptions& opts = {});

}  // namespace nucpath
