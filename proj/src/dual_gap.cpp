#include "nucpath/dual_gap.hpp"

#include "nucpath/error.hpp"

#include <Eigen/SVD>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nucpath {

namespace {

void check_shapes(const GapCertificate& cert, const ImpulseResponse& g_o) {
  if (cert.g_tilde_star.k_max() != g_o.k_max()) {
    throw std::invalid_argument("certificate and g_o lengths differ");
  }
}

double orthogonal_part_norm(const Eigen::VectorXd& h, const Eigen::VectorXd& v) {
  const double hh = h.squaredNorm();
  if (hh == 0.0) return v.norm();
  return (v - (h.dot(v) / hh) * h).norm();
}

GapCertificate assemble(const ImpulseResponse& g_tilde_star, double t_star,
                        const CompactSvd& svd, const Eigen::MatrixXd& Z,
                        SubgradientMode mode) {
  GapCertificate cert;
  cert.t_star = t_star;
  cert.g_tilde_star = g_tilde_star;
  cert.rank = svd.rank();
  cert.mode = mode;
  cert.h = hankel_adjoint(Z);
  cert.residual_dir_norm = orthogonal_part_norm(cert.h, g_tilde_star.values());
  return cert;
}

}  // namespace

GapCertificate subgradient_vector(const ImpulseResponse& g_tilde_star,
                                  double rank_tol, double t_star) {
  const CompactSvd svd = compact_svd(hankel_embed(g_tilde_star).matrix(), rank_tol);
  if (svd.rank() == 0) {
    GapCertificate cert;
    cert.t_star = t_star;
    cert.g_tilde_star = g_tilde_star;
    cert.h = Eigen::VectorXd::Zero(g_tilde_star.k_max());
    return cert;
  }
  const Eigen::MatrixXd Z = svd.U * svd.V.transpose();
  return assemble(g_tilde_star, t_star, svd, Z, SubgradientMode::zero_w);
}

GapCertificate make_certificate(const SolveResult& solve, double rank_tol,
                                SubgradientMode mode) {
  const double mult_norm = solve.multiplier.size() ? solve.multiplier.norm() : 0.0;
  if (mode == SubgradientMode::zero_w || mult_norm == 0.0) {
    return subgradient_vector(solve.g_tilde, rank_tol, solve.t);
  }
  // The multiplier lies in the normal cone of the nuclear ball at the
  // solution, i.e. it is ν(UVᵀ + W) with ‖UVᵀ + W‖₂ = 1. Dividing by the
  // spectral norm recovers UVᵀ + W without deciding the rank numerically.
  Eigen::JacobiSVD<Eigen::MatrixXd> mult_svd(solve.multiplier);
  const Eigen::VectorXd& sigma = mult_svd.singularValues();
  if (!sigma.allFinite() || !(sigma[0] > 0.0)) {
    throw NumericalError("constraint multiplier has no usable spectrum");
  }
  const Eigen::MatrixXd Z = solve.multiplier / sigma[0];
  const CompactSvd svd = compact_svd(hankel_embed(solve.g_tilde).matrix(), rank_tol);
  return assemble(solve.g_tilde, solve.t, svd, Z, SubgradientMode::dual_aligned);
}

double duality_gap_unclamped(const GapCertificate& cert,
                             const ImpulseResponse& g_o, double t) {
  check_shapes(cert, g_o);
  if (cert.degenerate()) {
    throw DegenerateCertificate("duality gap undefined for a zero subgradient vector");
  }
  if (t < cert.t_star) {
    throw std::invalid_argument("duality gap is only defined for t >= t*");
  }
  const Eigen::VectorXd r = t * cert.g_tilde_star.values() - g_o.values();
  const double hh = cert.h.squaredNorm();
  const double proj = cert.h.dot(r);
  return r.squaredNorm() - proj * proj / hh;
}

double duality_gap(const GapCertificate& cert, const ImpulseResponse& g_o,
                   double t) {
  const double literal = duality_gap_unclamped(cert, g_o, t);
  // Once hᵀr ≥ 0, g_o / t already satisfies hᵀ(g̃ − g̃*) ≤ 0: the relaxed
  // problem has optimal value zero, not the distance to the hyperplane.
  const Eigen::VectorXd r = t * cert.g_tilde_star.values() - g_o.values();
  if (cert.h.dot(r) >= 0.0) return r.squaredNorm();
  return std::max(0.0, literal);
}

double next_breakpoint_bracketed(const GapCertificate& cert,
                                 const ImpulseResponse& g_o, double eps,
                                 double t_max, double t_tol) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (cert.t_star >= t_max) return t_max;
  if (duality_gap(cert, g_o, t_max) <= eps) return t_max;
  double lo = cert.t_star;
  if (duality_gap(cert, g_o, lo) >= eps) {
    throw NumericalError("certificate gap already reaches eps at its own breakpoint");
  }
  auto f = [&](double t) { return duality_gap(cert, g_o, t) - eps; };
  // The gap is piecewise quadratic; locate the first cell that crosses eps
  // before refining inside it.
  constexpr int kCells = 64;
  double hi = t_max;
  for (int i = 1; i <= kCells; ++i) {
    const double t = cert.t_star + (t_max - cert.t_star) * i / kCells;
    if (f(t) >= 0.0) {
      hi = t;
      break;
    }
    lo = t;
  }
  auto tol = [t_tol](double a, double b) { return std::abs(b - a) <= t_tol; };
  std::uintmax_t max_iter = 200;
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol, max_iter);
  return 0.5 * (a + b);
}

double next_breakpoint(const GapCertificate& cert, const ImpulseResponse& g_o,
                       double eps, double t_max) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (cert.t_star >= t_max) return t_max;
  const double a = cert.residual_dir_norm;
  if (a == 0.0) return t_max;
  if (duality_gap(cert, g_o, t_max) <= eps) return t_max;

  const double step = cert.t_star + std::sqrt(eps) / a;
  if (step < t_max) {
    // Accept the closed form when its error, mapped to t through the slope
    // 2a√eps of the quadratic law, is negligible.
    const double gap = duality_gap(cert, g_o, step);
    const double t_error = std::abs(gap - eps) / (2.0 * a * std::sqrt(eps));
    if (t_error <= 1e-10 * (1.0 + step)) return step;
  }
  return next_breakpoint_bracketed(cert, g_o, eps, t_max);
}

double approx_objective(const ImpulseResponse& g_tilde_star,
                        const ImpulseResponse& g_o, double t) {
  if (g_tilde_star.k_max() != g_o.k_max()) {
    throw std::invalid_argument("approx_objective: length mismatch");
  }
  return (t * g_tilde_star.values() - g_o.values()).squaredNorm();
}

}  // namespace nucpath
