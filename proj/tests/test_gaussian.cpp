#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles/oracles.hpp"
#include "paramp/errors.hpp"
#include "paramp/gaussian.hpp"

using namespace paramp;

namespace {

MultimodeCovariance random_physical(std::size_t n_modes, std::mt19937& rng) {
  // S diag(nu) S^T with a random symplectic S built from beamsplitters and squeezers.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    const double nu = 1.0 + 3.0 * u(rng);
    c(k, k) = nu;
    c(k + 1, k + 1) = nu;
  }
  for (int rep = 0; rep < 3; ++rep) {
    for (Eigen::Index k = 0; k < dim; k += 2) {
      const double r = u(rng) - 0.5;
      Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
      s(k, k) = std::exp(r);
      s(k + 1, k + 1) = std::exp(-r);
      c = s * c * s.transpose();
    }
    for (Eigen::Index k = 0; k + 2 < dim; k += 2) {
      const double th = 2.0 * u(rng);
      Eigen::MatrixXd b = Eigen::MatrixXd::Identity(dim, dim);
      for (Eigen::Index q = 0; q < 2; ++q) {
        b(k + q, k + q) = std::cos(th);
        b(k + 2 + q, k + 2 + q) = std::cos(th);
        b(k + q, k + 2 + q) = std::sin(th);
        b(k + 2 + q, k + q) = -std::sin(th);
      }
      c = b * c * b.transpose();
    }
  }
  return MultimodeCovariance(0.5 * (c + c.transpose()));
}

}  // namespace

TEST(SymplecticSpectrum, VacuumIsPure) {
  const auto spec = symplectic_spectrum(MultimodeCovariance::vacuum(1));
  ASSERT_EQ(spec.size(), 1u);
  EXPECT_EQ(spec.gammas[0], 1.0);
  EXPECT_EQ(entropy_from_spectrum(spec), 0.0);
}

TEST(SymplecticSpectrum, PureSqueezedIsPure) {
  const double e2 = std::exp(2.0);
  const auto spec = symplectic_spectrum(MultimodeCovariance(QuadCovariance{e2, 0.0, 1.0 / e2}));
  EXPECT_NEAR(spec.gammas[0], 1.0, 1e-12);
}

TEST(SymplecticSpectrum, ZeroFrequencyOutputBlock) {
  const auto spec = symplectic_spectrum(MultimodeCovariance(QuadCovariance{81.0, 0.0, 0.012345679}));
  EXPECT_NEAR(spec.gammas[0], 1.0, 1e-7);
}

TEST(SymplecticSpectrum, ThermalTimesVacuum) {
  const auto c = direct_sum(MultimodeCovariance(QuadCovariance{3.0, 0.0, 3.0}), MultimodeCovariance::vacuum(1));
  const auto spec = symplectic_spectrum(c);
  ASSERT_EQ(spec.size(), 2u);
  EXPECT_NEAR(spec.gammas[0], 3.0, 1e-12);
  EXPECT_NEAR(spec.gammas[1], 1.0, 1e-12);
}

TEST(SymplecticSpectrum, SingleModeMatchesSqrtDet) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double a = std::exp(u(rng));
    const double b = std::exp(u(rng));
    const double c12 = 0.9 * std::sqrt(a * b) * u(rng) / 2.0;
    QuadCovariance q{a, c12, b};
    if (q.det() < 1.0) q = QuadCovariance{a / std::sqrt(q.det()) * 1.5, c12 / std::sqrt(q.det()) * 1.5,
                                          b / std::sqrt(q.det()) * 1.5};
    const double expected = oracle::single_mode_gamma(q);
    const double got = symplectic_spectrum(MultimodeCovariance(q)).gammas[0];
    EXPECT_NEAR(got, expected, 1e-12 * expected);
  }
}

TEST(SymplecticSpectrum, PermutationInvariant) {
  std::mt19937 rng(11);
  const auto c = random_physical(5, rng);
  std::vector<std::size_t> perm(5);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto a = symplectic_spectrum(c);
  const auto b = symplectic_spectrum(c.permuted(perm));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.gammas[i], b.gammas[i], 1e-12 * a.gammas[i]);
}

TEST(SymplecticSpectrum, DirectSumIsUnion) {
  std::mt19937 rng(3);
  const auto a = random_physical(2, rng);
  const auto b = random_physical(3, rng);
  const auto sa = symplectic_spectrum(a);
  const auto sb = symplectic_spectrum(b);
  const auto sab = symplectic_spectrum(direct_sum(a, b));

  std::vector<double> merged = sa.gammas;
  merged.insert(merged.end(), sb.gammas.begin(), sb.gammas.end());
  std::sort(merged.begin(), merged.end(), std::greater<>());
  ASSERT_EQ(merged.size(), sab.size());
  for (std::size_t i = 0; i < merged.size(); ++i) EXPECT_NEAR(sab.gammas[i], merged[i], 1e-12 * merged[i]);
  EXPECT_NEAR(entropy_from_spectrum(sab), entropy_from_spectrum(sa) + entropy_from_spectrum(sb), 1e-12);
}

TEST(SymplecticSpectrum, RejectsNonSymmetric) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 1) = 1e-6;
  EXPECT_THROW(MultimodeCovariance{m}, ContractViolation);
}

TEST(SymplecticSpectrum, RejectsOddSize) {
  EXPECT_THROW(MultimodeCovariance{Eigen::MatrixXd::Identity(3, 3)}, ContractViolation);
}

TEST(SymplecticSpectrum, ClampsTinyDeficit) {
  const auto spec = symplectic_spectrum(MultimodeCovariance(QuadCovariance{1.0 - 1e-12, 0.0, 1.0 - 1e-12}));
  EXPECT_EQ(spec.gammas[0], 1.0);
}

TEST(Entropy, HandValues) {
  EXPECT_NEAR(entropy_from_gamma(3.0), 2.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(entropy_from_gamma(5.0 / 3.0), 0.749780, 1e-6);
  EXPECT_EQ(entropy_from_gamma(1.0), 0.0);
  EXPECT_EQ(mode_entropy(0.0), 0.0);
}

TEST(Entropy, MonotoneInGamma) {
  double prev = -1.0;
  for (double g = 1.0; g < 50.0; g *= 1.05) {
    const double s = entropy_from_gamma(g);
    EXPECT_GT(s, prev);
    prev = s;
  }
}

TEST(Entropy, BelowVacuumRejected) { EXPECT_THROW(entropy_from_gamma(0.9), ContractViolation); }

TEST(Physicality, Examples) {
  EXPECT_TRUE(is_physical(MultimodeCovariance::vacuum(3)));
  EXPECT_FALSE(is_physical(MultimodeCovariance(QuadCovariance{0.5, 0.0, 0.5})));
}

TEST(SymplecticForm, Layout) {
  const auto j = symplectic_form(2);
  EXPECT_EQ(j(0, 1), 1.0);
  EXPECT_EQ(j(1, 0), -1.0);
  EXPECT_EQ(j(2, 3), 1.0);
  EXPECT_EQ(j(0, 2), 0.0);
}
