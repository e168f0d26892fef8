#pragma once

#include <stdexcept>
#include <string>

namespace nucpath {

/// Raised when a numerical routine cannot produce a trustworthy result
/// (SVD failure, degenerate certificate, stalled breakpoint search).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certificate evaluated with a zero subgradient vector.
class DegenerateCertificate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace nucpath
