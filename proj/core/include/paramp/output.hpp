#pragma once

// Late-time output line, discretized into Gabor atoms by a rectangular
// windowed cosine transform of width delta_t and harmonics k = 0..k_max.
// Terms exponentially small in |lambda_alpha| delta_t are neglected
// throughout; the window index never appears because the late-time state is
// stationary.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "paramp/gaussian.hpp"
#include "paramp/model.hpp"

namespace paramp {

inline constexpr int kDefaultKMaxCap = 8192;

class ModeGrid {
 public:
  /// Throws ContractViolation unless delta_t > 0 and k_max >= 0.
  ModeGrid(double delta_t, int k_max);

  double delta_t() const { return delta_t_; }
  int k_max() const { return k_max_; }
  std::size_t n_modes() const { return static_cast<std::size_t>(k_max_) + 1; }

  /// pi k / delta_t
  double omega(int k) const;
  /// 1 for k = 0, sqrt(2) otherwise
  double eta(int k) const;

 private:
  double delta_t_;
  int k_max_;
};

/// Returns a warning when delta_t |lambda1| < 5, where the neglected
/// exponential terms stop being small.
std::optional<std::string> grid_warning(const DerivedParams& d, const ModeGrid& g);

/// Window kernel F_{kk'}(alpha): a diagonal Lorentzian minus a window-boundary
/// term of order 1/delta_t that is nonzero only for even k + k'.
double f_kernel(int k, int k_prime, int alpha, const DerivedParams& d, const ModeGrid& g);

/// Dense covariance of the quadratures Z_{alpha k}, assembled entry by entry
/// from f_kernel. Throws ResourceLimitError if k_max exceeds `k_max_cap`.
MultimodeCovariance output_covariance(const DerivedParams& d, const ModeGrid& g,
                                      int k_max_cap = kDefaultKMaxCap);

/// Same matrix assembled from the per-parity diagonal-plus-rank-1 form.
MultimodeCovariance output_covariance_structured(const DerivedParams& d, const ModeGrid& g,
                                                 int k_max_cap = kDefaultKMaxCap);

/// One parity class (even or odd k) of the output covariance. In the
/// (Z1 block | Z2 block) ordering of its modes the covariance reads
///
///   [ diag(z1_diag) - z1_weight u u^T      cross * I                       ]
///   [ cross * I                            diag(z2_diag) + z2_weight v v^T ]
///
/// with u_k = eta_k / (lambda1^2 + omega_k^2), v_k = eta_k / (lambda2^2 + omega_k^2).
struct ParityBlock {
  int parity = 0;
  std::vector<int> harmonics;
  Eigen::VectorXd z1_diag;
  Eigen::VectorXd z2_diag;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double z1_weight = 0.0;
  double z2_weight = 0.0;
  double cross = 0.0;

  std::size_t size() const { return harmonics.size(); }
  Eigen::MatrixXd z1z1() const;
  Eigen::MatrixXd z2z2() const;
};

std::array<ParityBlock, 2> parity_blocks(const DerivedParams& d, const ModeGrid& g);

/// Mode order that lists even harmonics first, then odd ones. Under this
/// permutation the output covariance is exactly block diagonal.
std::vector<std::size_t> parity_permutation(const ModeGrid& g);

struct StructuredSpectrum {
  SymplecticSpectrum spectrum;                   // all n_modes values, descending
  std::array<std::vector<double>, 2> block_gammas;  // non-unit candidates per parity
};

/// Symplectic spectrum of output_covariance in O(k_max).
///
/// Within a parity block the cross term is a multiple of the identity, so
/// gamma^2 are the eigenvalues of Z1Z1 * Z2Z2 - cross^2. The diagonal part of
/// that product is exactly the identity (each diagonal_block is pure), leaving
/// identity plus a rank-2 matrix X Y^T whose nonzero eigenvalues are those of
/// the 2x2 matrix Y^T X. All other gammas equal 1.
StructuredSpectrum structured_spectrum(const DerivedParams& d, const ModeGrid& g,
                                       int k_max_cap = kDefaultKMaxCap,
                                       double tol_phys = kDefaultPhysTol);

/// 2x2 covariance block at frequency omega when the window-boundary term of
/// f_kernel is dropped. Always has unit determinant.
QuadCovariance diagonal_block(double omega, const DerivedParams& d);

enum class CoherenceKind { off_diagonal, diagonal };

struct CoherenceMatrix {
  CoherenceKind kind = CoherenceKind::off_diagonal;
  Eigen::MatrixXcd entries;
};

/// <B_k B_k'>, complex symmetric.
CoherenceMatrix offdiag_coherences(const DerivedParams& d, const ModeGrid& g,
                                   int k_max_cap = kDefaultKMaxCap);
/// <B_k^dagger B_k'>, Hermitian.
CoherenceMatrix diag_coherences(const DerivedParams& d, const ModeGrid& g,
                                int k_max_cap = kDefaultKMaxCap);

/// h_{ab}(t, t'): e^{lambda_a (t - t')} for t > t', e^{lambda_b (t' - t)} for t < t'.
double h_function(int alpha, int beta, double t, double t_prime, const DerivedParams& d);

/// Late-time correlator <Z_a(t) Z_b(t')> split into its smooth part and the
/// weight multiplying delta(t - t'). The delta term is not sampled; callers
/// integrate it analytically.
struct ContinuumCorrelator {
  Eigen::Matrix2cd smooth;
  Eigen::Matrix2cd delta_weight;
};

ContinuumCorrelator output_quadrature_correlator(double t, double t_prime, const DerivedParams& d);

/// Late-time <b_out^dagger(t) b_out(t')> in the rotating frame (smooth part).
double output_number_correlator(double t, double t_prime, const DerivedParams& d);

}  // namespace paramp
