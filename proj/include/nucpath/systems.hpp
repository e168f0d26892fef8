#pragma once

#include "nucpath/impulse_response.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace nucpath {

/// Stable SISO system in modal form: g_k = Σ_j residues_j · poles_j^{k-1}.
/// Complex poles come in conjugate pairs with conjugate residues, so the
/// impulse response is real.
struct SystemSpec {
  std::vector<std::complex<double>> poles;
  std::vector<std::complex<double>> residues;

  std::size_t order() const { return poles.size(); }

  /// Throws std::invalid_argument for mismatched sizes, |pole| ≥ 1 or a
  /// spec that is not conjugate-closed.
  void validate() const;
};

struct RadiusRange {
  double lo = 0.1;
  double hi = 0.9;
};

/// Group of poles drawn with moduli in `radius` and residue magnitudes
/// scaled by `residue_scale`.
struct PoleBand {
  int count = 0;
  RadiusRange radius;
  double residue_scale = 1.0;
};

/// SplitMix64 stream. Uniforms are the top 53 bits scaled by 2^-53, so a
/// seed produces the same doubles on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// g_{o,k} for k = 1..k_max. k_max must be odd.
ImpulseResponse impulse_response(const SystemSpec& spec, int k_max);

/// Σ_{k > k_max} g_k², in closed form from the poles and residues.
double tail_energy(const SystemSpec& spec, int k_max);

/// True iff the tail energy beyond k_max is at most tail_tol times the
/// energy of the first k_max coefficients.
bool check_truncation(const SystemSpec& spec, int k_max, double tail_tol = 1e-8);

/// Random conjugate-closed system of the given order. An odd order gets one
/// real pole. Generator version 1: per complex pair draw radius, angle in
/// [0.1π, 0.9π], residue magnitude in [0.5, 1] and phase in [0, 2π); per
/// real pole draw radius, sign and residue magnitude in [0.5, 1].
SystemSpec random_system(int order, std::uint64_t seed, RadiusRange radius = {});

/// Same generator applied band by band from a single stream.
SystemSpec random_banded_system(std::uint64_t seed, std::span<const PoleBand> bands);

/// `dominant` poles with radius in [0.6, 0.7] and unit residues, the rest
/// with radius in [0.1, 0.3] and residues scaled by 0.02.
std::vector<PoleBand> dominant_band_layout(int order, int dominant);

}  // namespace nucpath
