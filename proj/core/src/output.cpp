#include "paramp/output.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "paramp/errors.hpp"

namespace paramp {

namespace {

constexpr double kDiagonalDefectTol = 1e-10;

void check_cap(const ModeGrid& g, int k_max_cap) {
  if (g.k_max() > k_max_cap) {
    throw ResourceLimitError("k_max = " + std::to_string(g.k_max()) + " exceeds cap " +
                             std::to_string(k_max_cap) + " (" + std::to_string(2 * (g.k_max() + 1)) +
                             " quadratures)");
  }
}

double lorentz(double lambda, double omega) { return 1.0 / (lambda * lambda + omega * omega); }

}  // namespace

ModeGrid::ModeGrid(double delta_t, int k_max) : delta_t_(delta_t), k_max_(k_max) {
  if (!(delta_t > 0.0)) throw ContractViolation("delta_t > 0 violated: delta_t = " + std::to_string(delta_t));
  if (k_max < 0) throw ContractViolation("k_max >= 0 violated: k_max = " + std::to_string(k_max));
}

double ModeGrid::omega(int k) const { return std::numbers::pi * k / delta_t_; }

double ModeGrid::eta(int k) const { return k == 0 ? 1.0 : std::numbers::sqrt2; }

std::optional<std::string> grid_warning(const DerivedParams& d, const ModeGrid& g) {
  const double resolved = g.delta_t() * std::abs(d.lambda1);
  if (resolved < 5.0) {
    return "delta_t |lambda1| = " + std::to_string(resolved) +
           " < 5: neglected terms of order exp(-|lambda1| delta_t) are not small";
  }
  return std::nullopt;
}

double f_kernel(int k, int k_prime, int alpha, const DerivedParams& d, const ModeGrid& g) {
  const double lambda = d.lambda(alpha);
  const double lk = lorentz(lambda, g.omega(k));
  double value = (k == k_prime) ? lk : 0.0;
  if ((k + k_prime) % 2 == 0) {
    const double lkp = lorentz(lambda, g.omega(k_prime));
    value -= std::abs(lambda) * g.eta(k) * g.eta(k_prime) * lk * lkp / g.delta_t();
  }
  return value;
}

MultimodeCovariance output_covariance(const DerivedParams& d, const ModeGrid& g, int k_max_cap) {
  check_cap(g, k_max_cap);
  const int n = g.k_max() + 1;
  const double drive = 2.0 * d.gamma * d.f;
  const double cross = d.norm_N * d.sin2phi();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    for (int kp = 0; kp < n; ++kp) {
      c(2 * k, 2 * kp) = drive * f_kernel(k, kp, 1, d, g);
      c(2 * k + 1, 2 * kp + 1) = -drive * f_kernel(k, kp, 2, d, g);
    }
    c(2 * k, 2 * k) += d.norm_N;
    c(2 * k + 1, 2 * k + 1) += d.norm_N;
    c(2 * k, 2 * k + 1) = cross;
    c(2 * k + 1, 2 * k) = cross;
  }
  return MultimodeCovariance(std::move(c));
}

Eigen::MatrixXd ParityBlock::z1z1() const {
  Eigen::MatrixXd m = -z1_weight * u * u.transpose();
  m.diagonal() += z1_diag;
  return m;
}

Eigen::MatrixXd ParityBlock::z2z2() const {
  Eigen::MatrixXd m = z2_weight * v * v.transpose();
  m.diagonal() += z2_diag;
  return m;
}

std::array<ParityBlock, 2> parity_blocks(const DerivedParams& d, const ModeGrid& g) {
  const double drive = 2.0 * d.gamma * d.f;
  std::array<ParityBlock, 2> blocks;
  for (int parity = 0; parity < 2; ++parity) {
    ParityBlock& b = blocks[static_cast<std::size_t>(parity)];
    b.parity = parity;
    for (int k = parity; k <= g.k_max(); k += 2) b.harmonics.push_back(k);
    const auto m = static_cast<Eigen::Index>(b.harmonics.size());
    b.z1_diag.resize(m);
    b.z2_diag.resize(m);
    b.u.resize(m);
    b.v.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int k = b.harmonics[static_cast<std::size_t>(i)];
      const double l1 = lorentz(d.lambda1, g.omega(k));
      const double l2 = lorentz(d.lambda2, g.omega(k));
      b.z1_diag(i) = d.norm_N + drive * l1;
      b.z2_diag(i) = d.norm_N - drive * l2;
      b.u(i) = g.eta(k) * l1;
      b.v(i) = g.eta(k) * l2;
    }
    b.z1_weight = drive * std::abs(d.lambda1) / g.delta_t();
    b.z2_weight = drive * std::abs(d.lambda2) / g.delta_t();
    b.cross = d.norm_N * d.sin2phi();
  }
  return blocks;
}

MultimodeCovariance output_covariance_structured(const DerivedParams& d, const ModeGrid& g,
                                                 int k_max_cap) {
  check_cap(g, k_max_cap);
  const auto n = static_cast<Eigen::Index>(g.n_modes());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (const ParityBlock& b : parity_blocks(d, g)) {
    const Eigen::MatrixXd a11 = b.z1z1();
    const Eigen::MatrixXd a22 = b.z2z2();
    const auto m = static_cast<Eigen::Index>(b.size());
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index ki = b.harmonics[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::Index kj = b.harmonics[static_cast<std::size_t>(j)];
        c(2 * ki, 2 * kj) = a11(i, j);
        c(2 * ki + 1, 2 * kj + 1) = a22(i, j);
      }
      c(2 * ki, 2 * ki + 1) = b.cross;
      c(2 * ki + 1, 2 * ki) = b.cross;
    }
  }
  return MultimodeCovariance(std::move(c));
}

std::vector<std::size_t> parity_permutation(const ModeGrid& g) {
  std::vector<std::size_t> perm;
  perm.reserve(g.n_modes());
  for (int parity = 0; parity < 2; ++parity) {
    for (int k = parity; k <= g.k_max(); k += 2) perm.push_back(static_cast<std::size_t>(k));
  }
  return perm;
}

StructuredSpectrum structured_spectrum(const DerivedParams& d, const ModeGrid& g, int k_max_cap,
                                       double tol_phys) {
  check_cap(g, k_max_cap);
  StructuredSpectrum out;
  out.spectrum.gammas.reserve(g.n_modes());

  for (const ParityBlock& b : parity_blocks(d, g)) {
    const std::size_t m = b.size();
    if (m == 0) continue;

    const Eigen::ArrayXd diag_product = b.z1_diag.array() * b.z2_diag.array() - b.cross * b.cross;
    const double defect = (diag_product - 1.0).abs().maxCoeff();
    if (defect > kDiagonalDefectTol) {
      throw NumericalFailure("diagonal blocks are not pure to 1e-10 (defect " + std::to_string(defect) + ")",
                             2 * m);
    }

    // (D_A - a u u^T)(D_B + b v v^T) - s^2 I = I + X Y^T with
    // X = [D_A v, u], Y = [b v, -a (D_B u + b (u.v) v)].
    const double a = b.z1_weight;
    const double bw = b.z2_weight;
    const double uv = b.u.dot(b.v);
    const Eigen::VectorXd x1 = b.z1_diag.cwiseProduct(b.v);
    const Eigen::VectorXd& x2 = b.u;
    const Eigen::VectorXd y1 = bw * b.v;
    const Eigen::VectorXd y2 = -a * (b.z2_diag.cwiseProduct(b.u) + bw * uv * b.v);

    const double m11 = y1.dot(x1);
    const double m12 = y1.dot(x2);
    const double m21 = y2.dot(x1);
    const double m22 = y2.dot(x2);

    std::vector<double> mus;
    if (m == 1) {
      mus.push_back(m11 + m22);
    } else {
      const double half_trace = 0.5 * (m11 + m22);
      const double det = m11 * m22 - m12 * m21;
      double disc = half_trace * half_trace - det;
      // mu are O(f^2) while the entries are O(f), so rounding in disc is
      // measured against the squared entry size.
      const double entry = std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22), 1e-300});
      if (disc < 0.0) {
        if (disc < -1e-12 * entry * entry) {
          throw NumericalFailure("reduced 2x2 problem has complex eigenvalues", 2 * m);
        }
        disc = 0.0;
      }
      const double root = std::sqrt(disc);
      mus.push_back(half_trace + root);
      mus.push_back(half_trace - root);
    }

    auto& block_out = out.block_gammas[static_cast<std::size_t>(b.parity)];
    for (double mu : mus) {
      double gamma = std::sqrt(std::max(1.0 + mu, 0.0));
      if (gamma < 1.0 && gamma >= 1.0 - tol_phys) gamma = 1.0;
      block_out.push_back(gamma);
      out.spectrum.gammas.push_back(gamma);
    }
    for (std::size_t i = mus.size(); i < m; ++i) out.spectrum.gammas.push_back(1.0);
  }

  std::sort(out.spectrum.gammas.begin(), out.spectrum.gammas.end(), std::greater<>());
  return out;
}

QuadCovariance diagonal_block(double omega, const DerivedParams& d) {
  const double two_gf = 2.0 * d.gamma * d.f_prime;
  const double n = d.norm_N;
  return {n * (1.0 + two_gf * lorentz(d.lambda1, omega)), n * d.sin2phi(),
          n * (1.0 - two_gf * lorentz(d.lambda2, omega))};
}

CoherenceMatrix offdiag_coherences(const DerivedParams& d, const ModeGrid& g, int k_max_cap) {
  check_cap(g, k_max_cap);
  const int n = g.k_max() + 1;
  const double kappa_half = 0.5 * d.gamma * d.f * d.norm_N;
  const std::complex<double> e_minus = std::polar(1.0, -2.0 * d.phi);
  const std::complex<double> e_plus = std::polar(1.0, 2.0 * d.phi);
  CoherenceMatrix out{CoherenceKind::off_diagonal, Eigen::MatrixXcd::Zero(n, n)};
  for (int k = 0; k < n; ++k) {
    for (int kp = 0; kp < n; ++kp) {
      if ((k + kp) % 2 != 0) continue;
      out.entries(k, kp) = kappa_half * (e_minus * f_kernel(k, kp, 1, d, g) + e_plus * f_kernel(k, kp, 2, d, g));
    }
  }
  return out;
}

CoherenceMatrix diag_coherences(const DerivedParams& d, const ModeGrid& g, int k_max_cap) {
  check_cap(g, k_max_cap);
  const int n = g.k_max() + 1;
  const double kappa_half = 0.5 * d.gamma * d.f * d.norm_N;
  CoherenceMatrix out{CoherenceKind::diagonal, Eigen::MatrixXcd::Zero(n, n)};
  for (int k = 0; k < n; ++k) {
    for (int kp = 0; kp < n; ++kp) {
      if ((k + kp) % 2 != 0) continue;
      out.entries(k, kp) = kappa_half * (f_kernel(k, kp, 1, d, g) - f_kernel(k, kp, 2, d, g));
    }
  }
  return out;
}

double h_function(int alpha, int beta, double t, double t_prime, const DerivedParams& d) {
  if (t > t_prime) return std::exp(d.lambda(alpha) * (t - t_prime));
  if (t < t_prime) return std::exp(d.lambda(beta) * (t_prime - t));
  return 1.0;
}

ContinuumCorrelator output_quadrature_correlator(double t, double t_prime, const DerivedParams& d) {
  const NoiseMatrices nm = noise_matrices(d);
  ContinuumCorrelator out;
  out.smooth = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.smooth(a, b) = d.gamma * nm.L_hat(a, b) * h_function(a + 1, b + 1, t, t_prime, d);
    }
  }
  out.delta_weight = nm.M_hat;
  return out;
}

double output_number_correlator(double t, double t_prime, const DerivedParams& d) {
  const double kappa = d.gamma * d.f * d.norm_N;
  return 0.25 * kappa *
         (h_function(1, 1, t, t_prime, d) / std::abs(d.lambda1) -
          h_function(2, 2, t, t_prime, d) / std::abs(d.lambda2));
}

}  // namespace paramp
