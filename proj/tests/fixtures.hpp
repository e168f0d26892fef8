#pragma once

#include "nucpath/impulse_response.hpp"
#include "nucpath/systems.hpp"

#include <Eigen/Core>

#include <random>

namespace nucpath::testing {

inline constexpr int kSixthOrderKMax = 31;
inline constexpr std::uint64_t kSixthOrderSeed = 2;

/// Two dominant poles plus four weak ones (σ3/σ1 ≈ 2e-3 of H(g_o)).
inline SystemSpec sixth_order_two_dominant() {
  return random_banded_system(kSixthOrderSeed, dominant_band_layout(6, 2));
}

inline ImpulseResponse sixth_order_response() {
  return impulse_response(sixth_order_two_dominant(), kSixthOrderKMax);
}

/// Single pole 0.5 with unit residue, k_max = 3: [1, 0.5, 0.25].
inline ImpulseResponse rank_one_response() {
  return ImpulseResponse(Eigen::Vector3d(1.0, 0.5, 0.25));
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(size);
  for (auto& x : v) x = normal(rng);
  return v;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                                     Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

}  // namespace nucpath::testing
