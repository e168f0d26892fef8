#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace nucpath {

/// Truncated impulse response g_1..g_{k_max} of a scalar discrete-time
/// system. k_max is always odd so that the square Hankel embedding exists.
class ImpulseResponse {
 public:
  ImpulseResponse() : values_(Eigen::VectorXd::Zero(1)) {}

  /// Throws std::invalid_argument for even or zero length, or non-finite
  /// entries.
  explicit ImpulseResponse(Eigen::VectorXd values);

  /// Appends a trailing zero when `values` has even length. Zero padding
  /// leaves every H2 distance to the original sequence unchanged.
  static ImpulseResponse padded(Eigen::VectorXd values);

  static ImpulseResponse zeros(Eigen::Index k_max);

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index k_max() const { return values_.size(); }
  /// Side length of the Hankel matrix, (k_max + 1) / 2.
  Eigen::Index n() const { return (values_.size() + 1) / 2; }

  double operator[](Eigen::Index k) const { return values_[k]; }
  double norm() const { return values_.norm(); }
  double squared_norm() const { return values_.squaredNorm(); }

 private:
  Eigen::VectorXd values_;
};

}  // namespace nucpath
