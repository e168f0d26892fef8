#pragma once

#include "nucpath/dual_gap.hpp"
#include "nucpath/error.hpp"
#include "nucpath/impulse_response.hpp"
#include "nucpath/solver.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nucpath {

/// Owner index of the bootstrap segment [0, t_1], which is covered by the
/// zero model rather than by an exact solve.
inline constexpr int kBootstrapSegment = -1;

struct PathSample {
  double t = 0.0;
  double f_approx = 0.0;
  double gap = 0.0;
  /// Index into PathResult::exact_solutions of the segment owner, or
  /// kBootstrapSegment.
  int segment = kBootstrapSegment;
};

/// ε-approximate regularization path over [0, t_max].
struct PathResult {
  double epsilon = 0.0;
  double t_max = 0.0;
  /// End of the bootstrap segment, i.e. the first breakpoint.
  double bootstrap_end = 0.0;
  std::vector<double> breakpoints;
  std::vector<SolveResult> exact_solutions;
  /// Singular values of H(t_i · g̃_i), descending.
  std::vector<Eigen::VectorXd> singular_values;
  /// Certificate formed at each breakpoint below t_max.
  std::vector<GapCertificate> certificates;
  std::vector<PathSample> samples;
  /// Set when the computation stopped early.
  bool partial = false;

  std::size_t m() const { return breakpoints.size(); }
  std::vector<double> objectives() const;
};

/// Thrown when an exact solve fails to converge; carries the path computed
/// up to that point with partial == true.
class PathAborted : public NumericalError {
 public:
  PathAborted(const std::string& what, PathResult partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const PathResult& partial() const { return partial_; }

 private:
  PathResult partial_;
};

/// ‖H(g_o)‖_*, the smallest level that admits g = g_o.
double compute_t_max(const ImpulseResponse& g_o);

/// Singular values of H(g), descending.
Eigen::VectorXd hankel_singular_values(const ImpulseResponse& g);

/// Bound on f_t(0) − min f_t from ‖g̃‖₂ ≤ ‖H(g̃)‖_* ≤ 1:
/// ‖g_o‖² − max(0, ‖g_o‖ − t)².
double bootstrap_gap(const ImpulseResponse& g_o, double t);

/// Largest t with bootstrap_gap ≤ eps, i.e. ‖g_o‖ − √(‖g_o‖² − eps), or
/// t_max when eps ≥ ‖g_o‖².
double bootstrap_breakpoint(const ImpulseResponse& g_o, double eps, double t_max);

/// Runs the breakpoint loop: solve at t_i, record Σ_i, certify, step to the
/// next level where the gap reaches eps, until t_max has been solved.
PathResult compute_path(const ImpulseResponse& g_o, double eps,
                        int grid_points_per_segment = 20,
                        const SolverOptions& solver_opts = {},
                        SubgradientMode mode = SubgradientMode::dual_aligned);

/// Certified approximation at any t in [0, t_max]: the zero model on the
/// bootstrap segment, the owning certificate inside [t_i, t_{i+1}), and the
/// exact solve at t_max. Throws std::out_of_range past the covered range of a
/// partial path.
PathSample evaluate_path(const PathResult& path, const ImpulseResponse& g_o, double t);

struct SandwichCheck {
  double t = 0.0;
  double f_exact = 0.0;
  double f_approx = 0.0;
  double gap = 0.0;
  bool ok = false;
};

/// Slack added on both sides of the sandwich: 1e-6 · (1 + ‖g_o‖²).
double sandwich_slack(const ImpulseResponse& g_o);

/// Re-solves at `count` samples picked with SplitMix64(seed) and checks
/// f_approx − gap − slack ≤ f_exact ≤ f_approx + slack. Solves run on up to
/// `jobs` threads; the output order does not depend on `jobs`.
std::vector<SandwichCheck> verify_sandwich(const PathResult& path,
                                           const ImpulseResponse& g_o,
                                           int count, std::uint64_t seed,
                                           const SolverOptions& solver_opts = {},
                                           int jobs = 1);

}  // namespace nucpath
