#include "nucpath/systems.hpp"

#include "nucpath/error.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nucpath {

namespace {

constexpr double kRealTol = 1e-14;

bool close(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
}

void append_band(SplitMix64& rng, const PoleBand& band, SystemSpec& spec) {
  if (band.count < 0) throw std::invalid_argument("band count must be >= 0");
  const auto [lo, hi] = band.radius;
  if (!(lo >= 0.0 && lo <= hi && hi < 1.0)) {
    throw std::invalid_argument("pole radius range must satisfy 0 <= lo <= hi < 1");
  }
  const int pairs = band.count / 2;
  for (int p = 0; p < pairs; ++p) {
    const double radius = rng.uniform(lo, hi);
    const double angle = std::numbers::pi * rng.uniform(0.1, 0.9);
    const double magnitude = band.residue_scale * rng.uniform(0.5, 1.0);
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const auto pole = std::polar(radius, angle);
    const auto residue = std::polar(magnitude, phase);
    spec.poles.push_back(pole);
    spec.poles.push_back(std::conj(pole));
    spec.residues.push_back(residue);
    spec.residues.push_back(std::conj(residue));
  }
  if (band.count % 2 == 1) {
    const double radius = rng.uniform(lo, hi);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double magnitude = band.residue_scale * rng.uniform(0.5, 1.0);
    spec.poles.emplace_back(sign * radius, 0.0);
    spec.residues.emplace_back(magnitude, 0.0);
  }
}

}  // namespace

void SystemSpec::validate() const {
  if (poles.size() != residues.size()) {
    throw std::invalid_argument("poles and residues must have equal length");
  }
  std::vector<bool> matched(poles.size(), false);
  for (std::size_t j = 0; j < poles.size(); ++j) {
    if (!(std::abs(poles[j]) < 1.0)) {
      throw std::invalid_argument("unstable pole at index " + std::to_string(j));
    }
    if (matched[j]) continue;
    if (std::abs(poles[j].imag()) <= kRealTol) {
      if (std::abs(residues[j].imag()) > kRealTol * (1.0 + std::abs(residues[j]))) {
        throw std::invalid_argument("real pole with complex residue at index " +
                                    std::to_string(j));
      }
      matched[j] = true;
      continue;
    }
    bool found = false;
    for (std::size_t l = j + 1; l < poles.size() && !found; ++l) {
      if (!matched[l] && close(poles[l], std::conj(poles[j])) &&
          close(residues[l], std::conj(residues[j]))) {
        matched[j] = matched[l] = true;
        found = true;
      }
    }
    if (!found) {
      throw std::invalid_argument("complex pole without conjugate partner at index " +
                                  std::to_string(j));
    }
  }
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ImpulseResponse impulse_response(const SystemSpec& spec, int k_max) {
  if (k_max < 1 || k_max % 2 == 0) {
    throw std::invalid_argument("k_max must be a positive odd integer");
  }
  spec.validate();
  Eigen::VectorXd g(k_max);
  double residue_mass = 1.0;
  for (const auto& r : spec.residues) residue_mass += std::abs(r);
  std::vector<std::complex<double>> power(spec.poles.size(), {1.0, 0.0});
  for (int k = 0; k < k_max; ++k) {
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < spec.poles.size(); ++j) {
      sum += spec.residues[j] * power[j];
      power[j] *= spec.poles[j];
    }
    if (std::abs(sum.imag()) > 1e-12 * residue_mass) {
      throw NumericalError("impulse response has a non-negligible imaginary part");
    }
    g[k] = sum.real();
  }
  return ImpulseResponse(std::move(g));
}

double tail_energy(const SystemSpec& spec, int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  spec.validate();
  // Σ_{k≥K} g_k ḡ_k = Σ_{j,l} r_j r̄_l (p_j p̄_l)^K / (1 − p_j p̄_l).
  std::complex<double> total{0.0, 0.0};
  for (std::size_t j = 0; j < spec.poles.size(); ++j) {
    for (std::size_t l = 0; l < spec.poles.size(); ++l) {
      const auto q = spec.poles[j] * std::conj(spec.poles[l]);
      total += spec.residues[j] * std::conj(spec.residues[l]) *
               std::pow(q, k_max) / (1.0 - q);
    }
  }
  return std::max(0.0, total.real());
}

bool check_truncation(const SystemSpec& spec, int k_max, double tail_tol) {
  const double tail = tail_energy(spec, k_max);
  const double total = tail_energy(spec, 0);
  const double head = std::max(0.0, total - tail);
  return tail <= tail_tol * head;
}

SystemSpec random_system(int order, std::uint64_t seed, RadiusRange radius) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const PoleBand band{order, radius, 1.0};
  return random_banded_system(seed, std::span<const PoleBand>(&band, 1));
}

SystemSpec random_banded_system(std::uint64_t seed, std::span<const PoleBand> bands) {
  SplitMix64 rng(seed);
  SystemSpec spec;
  for (const auto& band : bands) append_band(rng, band, spec);
  spec.validate();
  return spec;
}

std::vector<PoleBand> dominant_band_layout(int order, int dominant) {
  if (order < 1 || dominant < 0 || dominant > order) {
    throw std::invalid_argument("need 0 <= dominant <= order and order >= 1");
  }
  return {PoleBand{dominant, {0.6, 0.7}, 1.0},
          PoleBand{order - dominant, {0.1, 0.3}, 0.02}};
}

}  // namespace nucpath
