#pragma once

#include "nucpath/hankel.hpp"
#include "nucpath/impulse_response.hpp"
#include "nucpath/solver.hpp"

#include <Eigen/Core>

namespace nucpath {

/// How the free block W of the nuclear-norm subgradient UVᵀ + W is chosen.
enum class SubgradientMode {
  /// W = 0. Always a valid subgradient, but the gap at t* is only zero when
  /// the optimum has full numerical rank.
  zero_w,
  /// UVᵀ + W read off the solver's constraint multiplier, normalized to unit
  /// spectral norm. The residual at t* is then parallel to h and the gap
  /// vanishes there.
  dual_aligned,
};

/// Everything needed to bound f_t(g̃*) − min f_t for t ≥ t*.
struct GapCertificate {
  /// h_k = tr[H_k (UVᵀ + W)].
  Eigen::VectorXd h;
  double t_star = 0.0;
  ImpulseResponse g_tilde_star;
  /// a = ‖(I − hhᵀ/‖h‖²) g̃*‖; the gap grows as (t − t*)² a².
  double residual_dir_norm = 0.0;
  /// Numerical rank of H(g̃*) used for U and V.
  Eigen::Index rank = 0;
  SubgradientMode mode = SubgradientMode::zero_w;

  bool degenerate() const { return h.size() == 0 || h.squaredNorm() == 0.0; }
};

/// h = H*(UVᵀ) from the compact SVD of H(g̃*) (W = 0). A zero g̃* gives an
/// empty SVD and a degenerate certificate.
GapCertificate subgradient_vector(const ImpulseResponse& g_tilde_star,
                                  double rank_tol = kDefaultRankTol,
                                  double t_star = 0.0);

/// Certificate for a finished solve. dual_aligned needs a nonzero
/// multiplier and falls back to W = 0 otherwise.
GapCertificate make_certificate(const SolveResult& solve,
                                double rank_tol = kDefaultRankTol,
                                SubgradientMode mode = SubgradientMode::dual_aligned);

/// ‖t·g̃* − g_o‖² − ‖hhᵀ(t·g̃* − g_o)‖² / ‖h‖⁴, without the zero floor.
double duality_gap_unclamped(const GapCertificate& cert,
                             const ImpulseResponse& g_o, double t);

/// Upper bound on f_t(g̃*) − min_{‖H(g̃)‖_* ≤ 1} f_t(g̃) for t ≥ t*: the
/// unclamped value floored at zero while hᵀ(t·g̃* − g_o) < 0, and
/// ‖t·g̃* − g_o‖² once g_o / t lies inside the halfspace hᵀ(g̃ − g̃*) ≤ 0.
double duality_gap(const GapCertificate& cert, const ImpulseResponse& g_o,
                   double t);

/// Smallest t > t* with duality_gap = eps, capped at t_max. Takes the
/// closed-form step t* + √eps / a and falls back to bracketing when the
/// gap there misses eps by more than 1e-10·(1 + t) expressed in t.
double next_breakpoint(const GapCertificate& cert, const ImpulseResponse& g_o,
                       double eps, double t_max);

/// Same root found by bracketing only; `t_tol` is the absolute width of the
/// final bracket.
double next_breakpoint_bracketed(const GapCertificate& cert,
                                 const ImpulseResponse& g_o, double eps,
                                 double t_max, double t_tol = 1e-12);

/// f_t(g̃*) = ‖t·g̃* − g_o‖², the approximate path value.
double approx_objective(const ImpulseResponse& g_tilde_star,
                        const ImpulseResponse& g_o, double t);

}  // namespace nucpath
