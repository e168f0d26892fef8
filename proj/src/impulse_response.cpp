#include "nucpath/impulse_response.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace nucpath {

ImpulseResponse::ImpulseResponse(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() == 0) {
    throw std::invalid_argument("impulse response must not be empty");
  }
  if (values_.size() % 2 == 0) {
    throw std::invalid_argument(
        "impulse response length must be odd, got " +
        std::to_string(values_.size()));
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("impulse response has non-finite entries");
  }
}

ImpulseResponse ImpulseResponse::padded(Eigen::VectorXd values) {
  if (values.size() % 2 == 0) {
    const Eigen::Index old = values.size();
    values.conservativeResize(old + 1);
    values[old] = 0.0;
  }
  return ImpulseResponse(std::move(values));
}

ImpulseResponse ImpulseResponse::zeros(Eigen::Index k_max) {
  return ImpulseResponse(Eigen::VectorXd::Zero(k_max));
}

}  // namespace nucpath
