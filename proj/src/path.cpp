#include "nucpath/path.hpp"

#include "nucpath/hankel.hpp"
#include "nucpath/systems.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

namespace nucpath {

namespace {

constexpr std::size_t kMaxBreakpoints = 100000;

void sample_segment(PathResult& path, double begin, double end, int points,
                    int owner, const auto& evaluate) {
  for (int p = 0; p < points; ++p) {
    const double frac = static_cast<double>(p) / static_cast<double>(points - 1);
    const double t = p + 1 == points ? end : begin + frac * (end - begin);
    const auto [f, gap] = evaluate(t);
    path.samples.push_back(PathSample{t, f, gap, owner});
  }
}

}  // namespace

std::vector<double> PathResult::objectives() const {
  std::vector<double> out;
  out.reserve(exact_solutions.size());
  for (const auto& s : exact_solutions) out.push_back(s.objective);
  return out;
}

double compute_t_max(const ImpulseResponse& g_o) {
  return nuclear_norm(hankel_embed(g_o).matrix());
}

Eigen::VectorXd hankel_singular_values(const ImpulseResponse& g) {
  return singular_values(hankel_embed(g).matrix());
}

double bootstrap_gap(const ImpulseResponse& g_o, double t) {
  const double norm = g_o.norm();
  const double lower = std::max(0.0, norm - t);
  return norm * norm - lower * lower;
}

double bootstrap_breakpoint(const ImpulseResponse& g_o, double eps, double t_max) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double norm2 = g_o.squared_norm();
  if (eps >= norm2) return t_max;
  return std::min(t_max, g_o.norm() - std::sqrt(norm2 - eps));
}

PathResult compute_path(const ImpulseResponse& g_o, double eps,
                        int grid_points_per_segment,
                        const SolverOptions& solver_opts, SubgradientMode mode) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("epsilon must be positive and finite");
  }
  if (grid_points_per_segment < 2) {
    throw std::invalid_argument("grid_points_per_segment must be >= 2");
  }
  if (g_o.squared_norm() == 0.0) {
    throw std::invalid_argument("compute_path needs a nonzero impulse response");
  }
  solver_opts.validate();

  PathResult path;
  path.epsilon = eps;
  path.t_max = compute_t_max(g_o);
  path.bootstrap_end = bootstrap_breakpoint(g_o, eps, path.t_max);

  const double norm2 = g_o.squared_norm();
  sample_segment(path, 0.0, path.bootstrap_end, grid_points_per_segment,
                 kBootstrapSegment, [&](double t) {
                   return std::pair{norm2, bootstrap_gap(g_o, t)};
                 });

  double t = path.bootstrap_end;
  while (true) {
    SolveResult solve = solve_constrained(g_o, t, solver_opts);
    if (!solve.converged) {
      path.partial = true;
      throw PathAborted("solver did not converge at t = " + std::to_string(t) +
                            " (primal " + std::to_string(solve.primal_residual) +
                            ", dual " + std::to_string(solve.dual_residual) + ")",
                        std::move(path));
    }
    path.breakpoints.push_back(t);
    path.singular_values.push_back(
        hankel_singular_values(ImpulseResponse(solve.model())));
    path.exact_solutions.push_back(std::move(solve));
    if (t >= path.t_max) break;

    const SolveResult& owner = path.exact_solutions.back();
    GapCertificate cert = make_certificate(owner, solver_opts.rank_tol, mode);
    double next = t;
    try {
      next = next_breakpoint(cert, g_o, eps, path.t_max);
    } catch (const NumericalError& e) {
      path.partial = true;
      throw PathAborted(e.what(), std::move(path));
    }
    if (!(next > t) || path.breakpoints.size() >= kMaxBreakpoints) {
      path.partial = true;
      throw PathAborted("breakpoint search made no progress at t = " +
                            std::to_string(t),
                        std::move(path));
    }
    const int index = static_cast<int>(path.exact_solutions.size()) - 1;
    sample_segment(path, t, next, grid_points_per_segment, index, [&](double s) {
      return std::pair{approx_objective(cert.g_tilde_star, g_o, s),
                       duality_gap(cert, g_o, s)};
    });
    path.certificates.push_back(std::move(cert));
    t = next;
  }
  return path;
}

PathSample evaluate_path(const PathResult& path, const ImpulseResponse& g_o, double t) {
  if (!(t >= 0.0) || t > path.t_max) throw std::out_of_range("t outside [0, t_max]");
  if (path.breakpoints.empty() || t < path.breakpoints.front()) {
    if (t > path.bootstrap_end) throw std::out_of_range("t beyond the computed path");
    return PathSample{t, g_o.squared_norm(), bootstrap_gap(g_o, t), kBootstrapSegment};
  }
  const auto it = std::upper_bound(path.breakpoints.begin(), path.breakpoints.end(), t);
  const auto i = static_cast<std::size_t>(it - path.breakpoints.begin()) - 1;
  if (path.breakpoints[i] == t) {
    return PathSample{t, path.exact_solutions[i].objective, 0.0, static_cast<int>(i)};
  }
  if (i >= path.certificates.size()) throw std::out_of_range("t beyond the computed path");
  const auto& cert = path.certificates[i];
  return PathSample{t, approx_objective(cert.g_tilde_star, g_o, t), duality_gap(cert, g_o, t),
                    static_cast<int>(i)};
}

double sandwich_slack(const ImpulseResponse& g_o) {
  return 1e-6 * (1.0 + g_o.squared_norm());
}

std::vector<SandwichCheck> verify_sandwich(const PathResult& path,
                                           const ImpulseResponse& g_o, int count,
                                           std::uint64_t seed,
                                           const SolverOptions& solver_opts,
                                           int jobs) {
  if (path.samples.empty() || count <= 0) return {};
  SplitMix64 rng(seed);
  std::vector<PathSample> picked;
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(rng.next() % path.samples.size());
    picked.push_back(path.samples[idx]);
  }
  const double slack = sandwich_slack(g_o);
  auto check = [&](const PathSample& s) {
    SandwichCheck c;
    c.t = s.t;
    c.f_approx = s.f_approx;
    c.gap = s.gap;
    if (s.t <= 0.0) {
      // Only g = 0 is feasible at t = 0.
      c.f_exact = g_o.squared_norm();
    } else {
      c.f_exact = solve_constrained(g_o, s.t, solver_opts).objective;
    }
    c.ok = c.f_exact >= s.f_approx - s.gap - slack && c.f_exact <= s.f_approx + slack;
    return c;
  };

  std::vector<SandwichCheck> out(picked.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < picked.size(); start += width) {
    const std::size_t stop = std::min(picked.size(), start + width);
    std::vector<std::future<SandwichCheck>> pending;
    for (std::size_t i = start; i < stop; ++i) {
      pending.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred,
                                   check, std::cref(picked[i])));
    }
    for (std::size_t i = start; i < stop; ++i) out[i] = pending[i - start].get();
  }
  return out;
}

}  // namespace nucpath
