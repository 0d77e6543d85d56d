#include <gtest/gtest.h>

#include <cmath>

#include "oracles/oracles.hpp"
#include "paramp/errors.hpp"
#include "paramp/output.hpp"

using namespace paramp;

namespace {

DerivedParams fig1() { return derive({1.0, 0.4, 0.0, 1.0}); }
DerivedParams fig2() { return derive({1.0, 0.3, std::sqrt(0.05), 1.0}); }

}  // namespace

TEST(ModeGrid, Validation) {
  EXPECT_THROW(ModeGrid(0.0, 4), ContractViolation);
  EXPECT_THROW(ModeGrid(10.0, -1), ContractViolation);
  const ModeGrid g(20.0, 3);
  EXPECT_EQ(g.n_modes(), 4u);
  EXPECT_EQ(g.eta(0), 1.0);
  EXPECT_EQ(g.eta(2), std::sqrt(2.0));
  EXPECT_NEAR(g.omega(3), 3.0 * std::numbers::pi / 20.0, 1e-15);
}

TEST(ModeGrid, Warning) {
  const auto d = fig2();
  EXPECT_TRUE(grid_warning(d, ModeGrid(10.0, 4)).has_value());
  EXPECT_FALSE(grid_warning(d, ModeGrid(20.0, 4)).has_value());
}

TEST(FKernel, Examples) {
  const auto d = fig2();
  const ModeGrid g(40.0, 4);
  EXPECT_NEAR(f_kernel(0, 0, 1, d, g), 1.0 / 0.09 - 0.3 / (40.0 * 0.0081), 1e-12);
  EXPECT_NEAR(f_kernel(0, 0, 1, d, g), 10.185185, 1e-6);
  EXPECT_EQ(f_kernel(0, 1, 1, d, g), 0.0);
  EXPECT_EQ(f_kernel(2, 3, 2, d, g), 0.0);

  const ModeGrid wide(1e6, 2);
  const double lorentz = 1.0 / (0.09 + wide.omega(1) * wide.omega(1));
  EXPECT_NEAR(f_kernel(1, 1, 1, d, wide), lorentz, 1e-5 * lorentz);
}

TEST(OutputCovariance, SingleZeroModeBlock) {
  const auto c = output_covariance(fig1(), ModeGrid(1e12, 0));
  EXPECT_NEAR(c(0, 0), 81.0, 1e-9);
  EXPECT_NEAR(c(1, 1), 0.0123457, 1e-7);
  EXPECT_NEAR(c(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(c.mode_block(0).det(), 1.0, 1e-9);
}

TEST(OutputCovariance, WeakDriveIsVacuum) {
  const auto c = output_covariance(derive({1.0, 1e-12, 0.0, 1.0}), ModeGrid(20.0, 7));
  EXPECT_LT((c.entries() - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(OutputCovariance, ExactlySymmetric) {
  const auto c = output_covariance(fig2(), ModeGrid(40.0, 30));
  EXPECT_EQ((c.entries() - c.entries().transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(OutputCovariance, ResourceGuard) {
  EXPECT_THROW(output_covariance(fig2(), ModeGrid(40.0, 100), 50), ResourceLimitError);
  EXPECT_THROW(structured_spectrum(fig2(), ModeGrid(40.0, 100), 50), ResourceLimitError);
}

TEST(OutputCovariance, StructuredAssemblyMatchesDense) {
  for (const auto& d : {fig1(), fig2()}) {
    for (int k_max : {0, 1, 2, 9, 64}) {
      const ModeGrid g(40.0, k_max);
      const auto a = output_covariance(d, g);
      const auto b = output_covariance_structured(d, g);
      EXPECT_LE((a.entries() - b.entries()).cwiseAbs().maxCoeff(), 1e-14 * a.entries().cwiseAbs().maxCoeff());
    }
  }
}

TEST(OutputCovariance, ParityBlockDiagonal) {
  const ModeGrid g(20.0, 11);
  const auto c = output_covariance(fig2(), g).permuted(parity_permutation(g));
  const Eigen::Index even = 2 * 6;
  EXPECT_EQ(c.entries().topRightCorner(even, c.entries().cols() - even).cwiseAbs().maxCoeff(), 0.0);

  const auto full = symplectic_spectrum(output_covariance(fig2(), g));
  const auto e = symplectic_spectrum(MultimodeCovariance(c.entries().topLeftCorner(even, even)));
  const auto o = symplectic_spectrum(MultimodeCovariance(c.entries().bottomRightCorner(even, even)));
  std::vector<double> merged = e.gammas;
  merged.insert(merged.end(), o.gammas.begin(), o.gammas.end());
  std::sort(merged.begin(), merged.end(), std::greater<>());
  for (std::size_t i = 0; i < merged.size(); ++i) EXPECT_NEAR(full.gammas[i], merged[i], 1e-12 * merged[i]);
}

TEST(OutputCovariance, PhysicalAcrossSweep) {
  for (double f : {0.1, 0.2, 0.3, 0.4, 0.45}) {
    for (double frac : {0.2, 0.6, 0.95}) {
      const double fp = std::min(f, 0.5) * frac;
      const auto d = derive({1.0, f, std::sqrt(f * f - fp * fp), 1.0});
      for (double dtl : {5.0, 30.0, 100.0}) {
        for (int k_max : {16, 400, 4000}) {
          const ModeGrid g(dtl / std::abs(d.lambda1), k_max);
          EXPECT_GE(structured_spectrum(d, g).spectrum.min_gamma(), 1.0 - kDefaultPhysTol);
        }
      }
    }
  }
}

TEST(StructuredSpectrum, MatchesDense) {
  for (const auto& d : {fig1(), fig2(), derive({1.0, 0.45, 0.1, 1.0})}) {
    for (double dt : {20.0, 40.0, 80.0}) {
      for (int k_max : {0, 1, 3, 32, 150}) {
        const ModeGrid g(dt, k_max);
        const auto dense = symplectic_spectrum(output_covariance(d, g));
        const auto fast = structured_spectrum(d, g).spectrum;
        ASSERT_EQ(dense.size(), fast.size());
        for (std::size_t i = 0; i < dense.size(); ++i) {
          EXPECT_NEAR(dense.gammas[i], fast.gammas[i], 1e-10 * dense.gammas[i]) << "k_max=" << k_max;
        }
      }
    }
  }
}

TEST(DiagonalBlock, Examples) {
  const auto d2 = fig2();
  const auto high = diagonal_block(1e6, d2);
  const auto n = noise_matrices(d2).N_hat;
  EXPECT_NEAR(high.c11, n(0, 0), 1e-10);
  EXPECT_NEAR(high.c12, n(0, 1), 1e-10);
  EXPECT_NEAR(high.c22, n(1, 1), 1e-10);

  const auto zero = diagonal_block(0.0, fig1());
  EXPECT_NEAR(zero.c11, 81.0, 1e-12);
  EXPECT_NEAR(zero.c22, 0.0123457, 1e-7);

  EXPECT_NEAR(diagonal_block(0.5, d2).det(), 1.0, 1e-12);
}

TEST(DiagonalBlock, PureOnLogGrid) {
  for (const auto& d : {fig1(), fig2(), derive({2.0, 0.9, 0.3, 1.0})}) {
    for (int i = 0; i < 100; ++i) {
      const double w = std::pow(10.0, -4.0 + 8.0 * i / 99.0);
      EXPECT_NEAR(diagonal_block(w, d).det(), 1.0, 1e-12) << "omega=" << w;
    }
  }
}

TEST(Coherences, ParityAndSymmetry) {
  const ModeGrid g(30.0, 12);
  const auto off = offdiag_coherences(fig2(), g);
  const auto dia = diag_coherences(fig2(), g);
  EXPECT_EQ(off.kind, CoherenceKind::off_diagonal);
  EXPECT_EQ(dia.kind, CoherenceKind::diagonal);
  EXPECT_LT((off.entries - off.entries.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((dia.entries - dia.entries.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  for (int k = 0; k <= 12; ++k) {
    EXPECT_GE(dia.entries(k, k).real(), 0.0);
    for (int kp = 0; kp <= 12; ++kp) {
      if ((k + kp) % 2 == 1) {
        EXPECT_EQ(off.entries(k, kp), 0.0);
        EXPECT_EQ(dia.entries(k, kp), 0.0);
      }
    }
  }
}

TEST(Coherences, OnResonanceRealDiagonal) {
  const auto d = fig1();
  const ModeGrid g(40.0, 6);
  const auto off = offdiag_coherences(d, g);
  for (int k = 0; k <= 6; ++k) {
    EXPECT_EQ(off.entries(k, k).imag(), 0.0);
    EXPECT_NEAR(off.entries(k, k).real(), 0.5 * d.gamma * d.f * (f_kernel(k, k, 1, d, g) + f_kernel(k, k, 2, d, g)),
                1e-13);
  }
}

TEST(Coherences, ZeroModeQuanta) {
  const auto dia = diag_coherences(fig1(), ModeGrid(1e12, 0));
  EXPECT_NEAR(dia.entries(0, 0).real(), 0.2 * (100.0 - 1.234568), 1e-6);
  EXPECT_NEAR(dia.entries(0, 0).real(), 19.753086, 1e-6);
  EXPECT_LT(diag_coherences(derive({1.0, 1e-14, 0.0, 1.0}), ModeGrid(20.0, 5)).entries.cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Coherences, RoundTripToCovariance) {
  for (const auto& d : {fig1(), fig2(), derive({1.0, 0.5, -0.4, 1.0})}) {
    const ModeGrid g(25.0, 17);
    const Eigen::MatrixXd rebuilt =
        oracle::covariance_from_coherences(offdiag_coherences(d, g).entries, diag_coherences(d, g).entries, d);
    const Eigen::MatrixXd c = output_covariance(d, g).entries();
    EXPECT_LT((rebuilt - c).cwiseAbs().maxCoeff(), 1e-12 * c.cwiseAbs().maxCoeff());
  }
}

TEST(ContinuumCorrelator, Structure) {
  const auto d = fig2();
  EXPECT_EQ(h_function(1, 2, 3.0, 3.0, d), 1.0);
  EXPECT_NEAR(h_function(1, 2, 5.0, 3.0, d), std::exp(2.0 * d.lambda1), 1e-15);
  EXPECT_NEAR(h_function(1, 2, 3.0, 5.0, d), std::exp(2.0 * d.lambda2), 1e-15);
  const auto a = output_quadrature_correlator(4.0, 2.0, d).smooth;
  const auto b = output_quadrature_correlator(5.0, 2.0, d).smooth;
  EXPECT_NEAR(b(0, 0).real() / a(0, 0).real(), std::exp(d.lambda1), 1e-14);
  EXPECT_NEAR(b(1, 1).real() / a(1, 1).real(), std::exp(d.lambda2), 1e-14);
  EXPECT_LT(std::abs(output_quadrature_correlator(1.0, 1.0, d).delta_weight(0, 1) -
                     noise_matrices(d).M_hat(0, 1)),
            1e-15);
}

TEST(ContinuumCorrelator, EqualTimeNumber) {
  EXPECT_NEAR(output_number_correlator(100.0, 100.0, fig1()), 0.888889, 1e-6);
}

TEST(ContinuumCorrelator, WindowedQuadratureReproducesCovariance) {
  const auto d = fig2();
  const ModeGrid g(100.0, 4);
  const auto c = output_covariance(d, g);
  const std::pair<int, int> pairs[] = {{0, 0}, {0, 2}, {1, 1}, {1, 3}, {2, 4}, {0, 1}, {3, 3}};
  for (auto [k, kp] : pairs) {
    for (int a = 1; a <= 2; ++a) {
      for (int b = 1; b <= 2; ++b) {
        const double ref = oracle::windowed_covariance_entry(a, b, k, kp, d, g, 24);
        EXPECT_NEAR(c(2 * k + a - 1, 2 * kp + b - 1), ref, 1e-8) << "k=" << k << " k'=" << kp << " a=" << a
                                                                 << " b=" << b;
      }
    }
  }
}
