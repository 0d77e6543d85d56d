#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles/oracles.hpp"
#include "paramp/errors.hpp"
#include "paramp/fock.hpp"

using namespace paramp;

TEST(FockSpace, LexicographicOrder) {
  const FockSpace s(3, 2);
  EXPECT_EQ(s.dim(), 27u);
  EXPECT_EQ(s.index({0, 0, 0}), 0u);
  EXPECT_EQ(s.index({0, 0, 1}), 1u);
  EXPECT_EQ(s.index({0, 1, 0}), 3u);
  EXPECT_EQ(s.index({1, 0, 0}), 9u);
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_EQ(s.index(s.occupation(i)), i);
}

TEST(FockSpace, Limits) {
  EXPECT_THROW(FockSpace(5, 1), ContractViolation);
  EXPECT_THROW(FockSpace(2, 5), ContractViolation);
  EXPECT_NO_THROW(FockSpace(4, 4));
}

TEST(FockState, NormalizedToUnitNorm) {
  const FockSpace s(2, 2);
  const auto st = (FockState::vacuum(s) * 3.0 + FockState::basis(s, {2, 0}) * std::complex<double>(0, 4)).normalized();
  EXPECT_NEAR(st.norm(), 1.0, 1e-12);
}

TEST(FockState, CreateRespectsCutoff) {
  const FockSpace s(2, 1);
  const auto one = FockState::vacuum(s).create(0);
  EXPECT_THROW(one.create(0), TruncationError);
  EXPECT_NEAR(std::abs(one.create(1).amplitude({1, 1})), 1.0, 1e-15);
}

TEST(Beamsplitter, UnitaryOnTruncatedSpace) {
  for (int cutoff : {1, 2, 3, 4}) {
    const FockSpace s(2, cutoff);
    const auto u = beamsplitter_unitary(s, 0, 1, 0.5 * std::numbers::pi);
    const auto n = static_cast<Eigen::Index>(s.dim());
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Beamsplitter, MatchesEigendecomposition) {
  const FockSpace s(3, 3);
  for (double angle : {0.3, 0.5 * std::numbers::pi, 2.0}) {
    const auto u = beamsplitter_unitary(s, 0, 2, angle);
    const auto ref = oracle::beamsplitter_by_eigendecomposition(s, 0, 2, angle);
    EXPECT_LT((u - ref).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Beamsplitter, MovesAllQuantaToB) {
  // Any g(a^dag)|0> with up to `cutoff` quanta ends with <n_a> = 0.
  const FockSpace s(2, 4);
  for (int n = 0; n <= 4; ++n) {
    const auto in = FockState::basis(s, {n, 0});
    const auto out = apply_beamsplitter(in, 0, 1, 0.5 * std::numbers::pi);
    EXPECT_NEAR(out.expectation(s.number(0)).real(), 0.0, 1e-12) << "n=" << n;
    EXPECT_NEAR(out.expectation(s.number(1)).real(), n, 1e-12);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
  }
}

TEST(Beamsplitter, TruncationError) {
  const FockSpace s(2, 2);
  const auto st = FockState::basis(s, {2, 1});
  EXPECT_THROW(apply_beamsplitter(st, 0, 1, 1.0), TruncationError);
}

TEST(Transfer, VacuumPassesThrough) {
  const auto r = beamsplitter_transfer(1.0, 0.0);
  EXPECT_LT(std::abs(r.b_squared_coherence), 1e-14);
  EXPECT_LT(r.residual_entanglement, 1e-14);
}

TEST(Transfer, SuperpositionMovesToB) {
  const auto r = beamsplitter_transfer(1.0, 1.0);
  EXPECT_GT(std::abs(r.b_squared_coherence), 0.1);
  // (|0> + sqrt2 |2>) / sqrt3 gives |<b^2>| = 2/3.
  EXPECT_NEAR(std::abs(r.b_squared_coherence), 2.0 / 3.0, 1e-12);
  EXPECT_LT(r.residual_entanglement, 1e-10);
  EXPECT_NEAR(r.mean_a_occupation, 0.0, 1e-12);
  EXPECT_NEAR(r.state_after.norm(), 1.0, 1e-12);
}

TEST(Transfer, Errors) {
  EXPECT_THROW(beamsplitter_transfer(0.0, 0.0), ContractViolation);
  EXPECT_THROW(beamsplitter_transfer(1.0, 1.0, 1), TruncationError);
}

TEST(Transfer, EntanglementBookkeeping) {
  // Mode r purifies a: |0>_a|0>_r + |2>_a|1>_r. After U the same entanglement sits between b and r.
  const FockSpace s(3, 2);  // (a, b, r)
  const auto in = (FockState::basis(s, {0, 0, 0}) + FockState::basis(s, {2, 0, 1})).normalized();
  const auto out = apply_beamsplitter(in, 0, 1, 0.5 * std::numbers::pi);
  const double before = von_neumann_entropy(reduced_density_matrix(in, {0}));
  const double after = von_neumann_entropy(reduced_density_matrix(out, {1}));
  EXPECT_NEAR(before, std::log(2.0), 1e-12);
  EXPECT_NEAR(after, before, 1e-10);
  EXPECT_LT(von_neumann_entropy(reduced_density_matrix(out, {0})), 1e-10);
}

TEST(Swap, Protocol) {
  const auto r = entanglement_swap();
  EXPECT_NEAR(r.projection_probability, 0.25, 1e-14);
  EXPECT_NEAR(r.projection_probability + r.complement_probability, 1.0, 1e-14);
  EXPECT_NEAR(r.target_fidelity, 1.0, 1e-12);
  EXPECT_NEAR(r.b_pair_entanglement, std::log(2.0), 1e-10);
  EXPECT_NEAR(r.post_state.norm(), 1.0, 1e-12);
}

TEST(Swap, ProbabilityByDirectInnerProduct) {
  // Build |Psi> and |Phi>_a (x) arbitrary b directly in the 16-dim basis (a1, a2, b1, b2).
  const FockSpace s(4, 1);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
  for (int x : {0, 1}) {
    for (int y : {0, 1}) psi(static_cast<Eigen::Index>(s.index({x, y, x, y}))) = 0.5;
  }
  double prob = 0.0;
  for (int b1 : {0, 1}) {
    for (int b2 : {0, 1}) {
      std::complex<double> amp = 0.0;
      amp += psi(static_cast<Eigen::Index>(s.index({0, 0, b1, b2}))) / std::sqrt(2.0);
      amp += psi(static_cast<Eigen::Index>(s.index({1, 1, b1, b2}))) / std::sqrt(2.0);
      prob += std::norm(amp);
    }
  }
  EXPECT_NEAR(prob, 0.25, 1e-15);
  EXPECT_NEAR(entanglement_swap().projection_probability, prob, 1e-15);
}
