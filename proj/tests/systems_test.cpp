#include "nucpath/hankel.hpp"
#include "nucpath/systems.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

namespace nucpath {
namespace {

using cd = std::complex<double>;

SystemSpec single_pole(double pole, double residue = 1.0) {
  return SystemSpec{{cd(pole, 0.0)}, {cd(residue, 0.0)}};
}

TEST(ImpulseResponse, GeometricSequence) {
  const auto g = impulse_response(single_pole(0.5), 3);
  ASSERT_EQ(g.k_max(), 3);
  EXPECT_EQ(g[0], 1.0);
  EXPECT_EQ(g[1], 0.5);
  EXPECT_EQ(g[2], 0.25);
}

TEST(ImpulseResponse, ZeroResiduesGiveZeroVector) {
  const SystemSpec spec{{cd(0.3, 0.0), cd(0.2, 0.4), cd(0.2, -0.4)},
                        {cd(0.0, 0.0), cd(0.0, 0.0), cd(0.0, 0.0)}};
  EXPECT_EQ(impulse_response(spec, 7).values(), Eigen::VectorXd::Zero(7));
}

TEST(ImpulseResponse, ConjugatePairMatchesComplexOracle) {
  const cd p = std::polar(0.5, std::numbers::pi / 3.0);
  const SystemSpec spec{{p, std::conj(p)}, {cd(0.5, 0.0), cd(0.5, 0.0)}};
  const auto g = impulse_response(spec, 5);
  const auto expected = oracle::modal_sum(spec.poles, spec.residues, 5);
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(expected[k].imag(), 0.0, 1e-12);
    EXPECT_NEAR(g[k], expected[k].real(), 1e-12);
  }
  // 0.5^k cos(kπ/3) closed form for the same pair.
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(g[k], std::pow(0.5, k) * std::cos(k * std::numbers::pi / 3.0), 1e-12);
  }
}

TEST(ImpulseResponse, RejectsEvenKMaxAndUnstablePoles) {
  EXPECT_THROW(impulse_response(single_pole(0.5), 4), std::invalid_argument);
  EXPECT_THROW(impulse_response(single_pole(0.5), 0), std::invalid_argument);
  EXPECT_THROW(impulse_response(single_pole(1.0), 3), std::invalid_argument);
  EXPECT_THROW(impulse_response(single_pole(-1.2), 3), std::invalid_argument);
}

TEST(SystemSpecValidate, Errors) {
  EXPECT_NO_THROW(single_pole(0.9).validate());
  EXPECT_NO_THROW(SystemSpec{}.validate());
  EXPECT_THROW((SystemSpec{{cd(0.5, 0.0)}, {}}.validate()), std::invalid_argument);
  // Complex pole without its conjugate.
  EXPECT_THROW((SystemSpec{{cd(0.2, 0.3)}, {cd(1.0, 0.0)}}.validate()),
               std::invalid_argument);
  // Conjugate pole with non-conjugate residue.
  EXPECT_THROW((SystemSpec{{cd(0.2, 0.3), cd(0.2, -0.3)}, {cd(1.0, 0.5), cd(1.0, 0.5)}}
                    .validate()),
               std::invalid_argument);
  // Real pole with complex residue.
  EXPECT_THROW((SystemSpec{{cd(0.2, 0.0)}, {cd(1.0, 0.5)}}.validate()),
               std::invalid_argument);
  EXPECT_THROW((SystemSpec{{cd(0.0, 1.0), cd(0.0, -1.0)}, {cd(1.0, 0.0), cd(1.0, 0.0)}}
                    .validate()),
               std::invalid_argument);
}

TEST(TailEnergy, MatchesLongDirectSum) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto spec = random_system(5, seed, {0.1, 0.8});
    const int k_max = 9;
    const auto long_run = oracle::modal_sum(spec.poles, spec.residues, 600);
    double direct = 0.0;
    for (std::size_t k = k_max; k < long_run.size(); ++k) {
      direct += std::norm(long_run[k].real());
    }
    EXPECT_NEAR(tail_energy(spec, k_max), direct, 1e-12 * (1.0 + direct)) << seed;
  }
}

TEST(TailEnergy, GeometricClosedForm) {
  // Σ_{k>K} 0.25^{k-1} = 0.25^K / 0.75.
  EXPECT_NEAR(tail_energy(single_pole(0.5), 5), std::pow(0.25, 5) / 0.75, 1e-16);
  EXPECT_EQ(tail_energy(SystemSpec{}, 5), 0.0);
}

TEST(CheckTruncation, Examples) {
  EXPECT_TRUE(check_truncation(single_pole(0.5), 31, 1e-6));
  EXPECT_FALSE(check_truncation(single_pole(0.999), 31, 1e-6));
  EXPECT_TRUE(check_truncation(SystemSpec{}, 31, 1e-6));
  EXPECT_TRUE(check_truncation(SystemSpec{{cd(0.5, 0.0)}, {cd(0.0, 0.0)}}, 3));
}

TEST(CheckTruncation, DefaultToleranceIsStrict) {
  // 0.25^K / 0.75 relative to ~4/3: K = 15 leaves ~1e-9, K = 11 ~2.4e-7.
  EXPECT_TRUE(check_truncation(single_pole(0.5), 15));
  EXPECT_FALSE(check_truncation(single_pole(0.5), 11));
}

TEST(SplitMix64, KnownStream) {
  // Reference outputs of the published SplitMix64 for seed 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64, UniformRange) {
  SplitMix64 rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(-2.0, 3.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 3.0);
  }
}

TEST(RandomSystem, DeterministicInSeed) {
  const auto a = random_system(6, 123);
  const auto b = random_system(6, 123);
  const auto c = random_system(6, 124);
  EXPECT_EQ(a.poles, b.poles);
  EXPECT_EQ(a.residues, b.residues);
  EXPECT_NE(a.poles, c.poles);
}

TEST(RandomSystem, OrderOneIsSingleRealPole) {
  const auto spec = random_system(1, 9);
  ASSERT_EQ(spec.order(), 1u);
  EXPECT_EQ(spec.poles[0].imag(), 0.0);
  EXPECT_EQ(spec.residues[0].imag(), 0.0);
}

TEST(RandomSystem, RadiiWithinRangeAndConjugateClosed) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int order = 1 + static_cast<int>(seed % 9);
    const auto spec = random_system(order, seed, {0.2, 0.7});
    ASSERT_EQ(spec.order(), static_cast<std::size_t>(order));
    EXPECT_NO_THROW(spec.validate());
    for (const auto& p : spec.poles) {
      EXPECT_GE(std::abs(p), 0.2 - 1e-15);
      EXPECT_LE(std::abs(p), 0.7 + 1e-15);
    }
  }
}

TEST(RandomSystem, RejectsBadArguments) {
  EXPECT_THROW(random_system(0, 1), std::invalid_argument);
  EXPECT_THROW(random_system(2, 1, {0.5, 1.0}), std::invalid_argument);
  EXPECT_THROW(random_system(2, 1, {0.6, 0.5}), std::invalid_argument);
}

TEST(RandomSystem, RealStableAndDecaying) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto spec = random_system(4, seed, {0.1, 0.9});
    const auto g = impulse_response(spec, 201);
    ASSERT_TRUE(g.values().allFinite());
    double rho = 0.0;
    for (const auto& p : spec.poles) rho = std::max(rho, std::abs(p));
    ASSERT_LT(rho, 1.0);
    // |g_k| ≤ C·ρ^{k-1} with C = Σ|r_j|.
    double c = 0.0;
    for (const auto& r : spec.residues) c += std::abs(r);
    for (int k = 0; k < 201; ++k) {
      EXPECT_LE(std::abs(g[k]), c * std::pow(rho, k) * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST(RandomSystem, OrderEqualsNumericalHankelRank) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int order = 1 + static_cast<int>(seed % 6);
    const auto spec = random_system(order, seed, {0.2, 0.6});
    const int k_max = 61;
    ASSERT_TRUE(check_truncation(spec, k_max));
    const auto s = singular_values(hankel_embed(impulse_response(spec, k_max)).matrix());
    // Nearly coincident poles can make σ_r small, but it stays above roundoff.
    EXPECT_GT(s[order - 1] / s[0], 1e-13) << "seed " << seed;
    EXPECT_LE(s[order] / s[0], 1e-8) << "seed " << seed;
  }
}

TEST(BandedSystem, SixthOrderFixtureHasTwoDominantValues) {
  const auto spec = testing::sixth_order_two_dominant();
  ASSERT_EQ(spec.order(), 6u);
  EXPECT_TRUE(check_truncation(spec, testing::kSixthOrderKMax));
  const auto s = singular_values(hankel_embed(testing::sixth_order_response()).matrix());
  EXPECT_LE(s[2] / s[0], 0.1);
  EXPECT_GT(s[1] / s[0], 0.1);
}

TEST(BandedSystem, LayoutSplitsOrder) {
  const auto bands = dominant_band_layout(6, 2);
  ASSERT_EQ(bands.size(), 2u);
  EXPECT_EQ(bands[0].count, 2);
  EXPECT_EQ(bands[1].count, 4);
  const auto spec = random_banded_system(5, bands);
  EXPECT_EQ(spec.order(), 6u);
  EXPECT_GE(std::abs(spec.poles[0]), 0.6);
  for (std::size_t j = 2; j < spec.order(); ++j) EXPECT_LE(std::abs(spec.poles[j]), 0.3);
}

}  // namespace
}  // namespace nucpath
