#pragma once

// Zero-mean Gaussian-state linear algebra in the normalization where the
// quadrature commutator is [Z1, Z2] = 2i and the vacuum covariance is the
// identity. Symplectic eigenvalues are then |eig(J C)| with
// J = diag([[0, 1], [-1, 0]], ...), and a pure mode has gamma = 1.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace paramp {

inline constexpr double kDefaultPhysTol = 1e-10;

/// Real symmetric 2x2 covariance of one mode's quadratures.
struct QuadCovariance {
  double c11 = 1.0;
  double c12 = 0.0;
  double c22 = 1.0;

  double det() const { return c11 * c22 - c12 * c12; }
  double trace() const { return c11 + c22; }
  Eigen::Matrix2d matrix() const;
  static QuadCovariance from_matrix(const Eigen::Matrix2d& m);
  static QuadCovariance vacuum() { return {}; }
};

/// Covariance of n modes in interleaved order (Z1 of mode 0, Z2 of mode 0,
/// Z1 of mode 1, ...). The stored matrix is exactly symmetric.
class MultimodeCovariance {
 public:
  /// Throws ContractViolation if `m` is not square with even size, or if its
  /// relative symmetry defect exceeds 1e-12. The accepted matrix is
  /// re-symmetrized so that downstream code sees exact symmetry.
  explicit MultimodeCovariance(Eigen::MatrixXd m);
  explicit MultimodeCovariance(const QuadCovariance& q);

  static MultimodeCovariance vacuum(std::size_t n_modes);

  std::size_t n_modes() const { return static_cast<std::size_t>(entries_.rows() / 2); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  /// 2x2 block of mode k.
  QuadCovariance mode_block(std::size_t k) const;

  /// Reorders modes: result mode i is this mode perm[i].
  MultimodeCovariance permuted(const std::vector<std::size_t>& perm) const;

 private:
  Eigen::MatrixXd entries_;
};

/// A ⊕ B in mode order (modes of A first).
MultimodeCovariance direct_sum(const MultimodeCovariance& a, const MultimodeCovariance& b);

struct SymplecticSpectrum {
  std::vector<double> gammas;  // sorted descending

  std::size_t size() const { return gammas.size(); }
  double min_gamma() const;
  /// Thermal occupancies (gamma - 1) / 2, clamped at 0.
  std::vector<double> occupancies() const;
};

/// Block-diagonal symplectic form for n modes.
Eigen::MatrixXd symplectic_form(std::size_t n_modes);

/// Symplectic eigenvalues via a dense general eigen decomposition of J C.
/// Values within `tol_phys` below 1 are clamped to exactly 1; values further
/// below are returned as-is so callers can detect unphysical input.
/// Throws NumericalFailure if the eigen solver does not converge.
SymplecticSpectrum symplectic_spectrum(const MultimodeCovariance& c,
                                       double tol_phys = kDefaultPhysTol);

/// Ideal-gas entropy (n + 1) ln(n + 1) - n ln n of a single thermal mode.
double mode_entropy(double occupancy);

/// Entropy in nats of a Gaussian state with the given spectrum. Throws
/// ContractViolation if any gamma is below 1 - tol_phys.
double entropy_from_spectrum(const SymplecticSpectrum& spec, double tol_phys = kDefaultPhysTol);

/// Entropy of a single mode from gamma = sqrt(det C).
double entropy_from_gamma(double gamma, double tol_phys = kDefaultPhysTol);

bool is_physical(const MultimodeCovariance& c, double tol_phys = kDefaultPhysTol);

}  // namespace paramp
