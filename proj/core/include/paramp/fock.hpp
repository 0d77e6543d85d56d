#pragma once

// Few-mode truncated Fock space for the entanglement-transfer and
// entanglement-swap demonstrations. Basis states are occupation tuples
// (n_0, ..., n_{m-1}) with 0 <= n_i <= cutoff, ordered lexicographically with
// mode 0 most significant.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace paramp {

inline constexpr int kMaxFockModes = 4;
inline constexpr int kMaxFockCutoff = 4;
inline constexpr double kTruncationTol = 1e-12;

using Occupation = std::vector<int>;

class FockSpace {
 public:
  /// Throws ContractViolation unless 1 <= n_modes <= 4 and 0 <= cutoff <= 4.
  FockSpace(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t dim() const { return dim_; }

  std::size_t index(const Occupation& occ) const;
  Occupation occupation(std::size_t index) const;

  /// Dense annihilation operator of `mode` on the truncated space.
  Eigen::MatrixXcd annihilation(int mode) const;
  Eigen::MatrixXcd creation(int mode) const { return annihilation(mode).adjoint(); }
  Eigen::MatrixXcd number(int mode) const;

  bool operator==(const FockSpace& other) const = default;

 private:
  int n_modes_;
  int cutoff_;
  std::size_t dim_;
};

class FockState {
 public:
  FockState(FockSpace space, Eigen::VectorXcd amplitudes);

  static FockState vacuum(const FockSpace& space);
  static FockState basis(const FockSpace& space, const Occupation& occ);

  const FockSpace& space() const { return space_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::complex<double> amplitude(const Occupation& occ) const;

  double norm() const { return amplitudes_.norm(); }
  /// Throws ContractViolation for the zero vector.
  FockState normalized() const;

  /// a_mode^dagger |psi>. Throws TruncationError if an amplitude above
  /// kTruncationTol sits at the cutoff of `mode`.
  FockState create(int mode) const;
  FockState apply(const Eigen::MatrixXcd& op) const;

  std::complex<double> expectation(const Eigen::MatrixXcd& op) const;
  std::complex<double> inner(const FockState& other) const;  // <this|other>

  FockState operator+(const FockState& other) const;
  FockState operator*(std::complex<double> c) const;

 private:
  FockSpace space_;
  Eigen::VectorXcd amplitudes_;
};

/// exp[angle (b^dagger a - a^dagger b)] on the truncated space, by Pade
/// scaling and squaring. Unitary on the truncated space because the
/// truncated generator stays anti-Hermitian.
Eigen::MatrixXcd beamsplitter_unitary(const FockSpace& space, int mode_a, int mode_b, double angle);

/// Applies beamsplitter_unitary after checking that the state has no weight
/// in (a, b) photon-number sectors the cutoff truncates. Throws TruncationError.
FockState apply_beamsplitter(const FockState& state, int mode_a, int mode_b, double angle);

/// Partial trace onto `keep` (in the given order).
Eigen::MatrixXcd reduced_density_matrix(const FockState& state, const std::vector<int>& keep);

/// -tr(rho ln rho) in nats.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

struct ProjectionResult {
  double probability = 0.0;
  double complement_probability = 0.0;
  FockState post_state;  // normalized state of the remaining modes
};

/// Projects `modes` of `state` onto `target` and returns the normalized state
/// of the other modes (in their original order). Throws ContractViolation if
/// the projection has zero probability.
ProjectionResult project_modes(const FockState& state, const std::vector<int>& modes, const FockState& target);

struct TransferResult {
  std::complex<double> b_squared_coherence;  // <b^2>; phase depends on the sign convention of U
  double residual_entanglement = 0.0;        // entropy of the reduced state of mode a
  double mean_a_occupation = 0.0;            // <n_a> after the transfer
  FockState state_before;
  FockState state_after;
};

/// Prepares [c1 + c2 (a^dagger)^2]|0> on modes (a, b), applies the pi/2
/// beamsplitter and reports the coherence left in b.
/// Throws ContractViolation if c1 = c2 = 0 and TruncationError if cutoff < 2.
TransferResult beamsplitter_transfer(std::complex<double> c1, std::complex<double> c2, int cutoff = 2);

struct SwapResult {
  double projection_probability = 0.0;
  double complement_probability = 0.0;
  FockState post_state;          // modes (b1, b2)
  double target_fidelity = 0.0;  // |<X|post>|^2
  double b_pair_entanglement = 0.0;
};

/// (1/sqrt 2)(1 + b1^dagger b2^dagger)|0> on two modes with cutoff 1.
FockState swap_target_state();

/// Prepares (1/2)(1 + a1^dag b1^dag)(1 + a2^dag b2^dag)|0> on modes
/// (a1, a2, b1, b2), projects (a1, a2) onto (1/sqrt 2)(1 + a1^dag a2^dag)|0>.
SwapResult entanglement_swap();

}  // namespace paramp
