#pragma once

// Degenerate parametric amplifier coupled to a vacuum Markovian bath, in the
// frame rotating at half the pump frequency. Quadratures X1, X2 are rotated
// by the angle phi so the linear dynamics is diagonal with relaxation
// exponents lambda1 (slow) and lambda2 (fast).

#include <Eigen/Dense>

#include "paramp/gaussian.hpp"

namespace paramp {

struct ParampParams {
  double gamma = 1.0;          // decay rate into the line
  double f = 0.0;              // drive amplitude
  double delta_omega = 0.0;    // detuning from half the pump frequency
  double omega_p = 1.0;        // pump frequency, enters only the powers
};

struct DerivedParams {
  double gamma = 1.0;
  double f = 0.0;
  double delta_omega = 0.0;
  double f_prime = 0.0;  // sqrt(f^2 - delta_omega^2)
  double lambda1 = 0.0;  // -gamma/2 + f_prime
  double lambda2 = 0.0;  // -gamma/2 - f_prime
  double phi = 0.0;      // f_prime + i delta_omega = f exp(2 i phi), |phi| < pi/4
  double norm_N = 1.0;   // 1 / cos(2 phi) = f / f_prime

  double sin2phi() const { return delta_omega / f; }
  double cos2phi() const { return f_prime / f; }
  /// lambda_alpha for alpha in {1, 2}.
  double lambda(int alpha) const { return alpha == 1 ? lambda1 : lambda2; }
};

/// Validates the regime (|delta_omega| < f, f' < gamma/2, gamma > 0, f > 0)
/// and computes the derived scalars. Throws RegimeError naming the violated
/// inequality.
DerivedParams derive(const ParampParams& p);

struct NoiseMatrices {
  Eigen::Matrix2cd M_hat;  // input correlator weight, Hermitian
  Eigen::Matrix2d N_hat;   // symmetrized (Hermitian) part of M_hat
  Eigen::Matrix2d L_hat;   // diag(-f / lambda1, f / lambda2)
};

NoiseMatrices noise_matrices(const DerivedParams& d);

/// Squeezed vacuum of a(0) with squeezing r along the real part of a(0),
/// expressed in the rotated quadratures.
QuadCovariance squeezed_initial_covariance(double r, const DerivedParams& d);

/// Closed-form covariance evolution from C0. Throws ContractViolation for t < 0.
QuadCovariance covariance_at(double t, const QuadCovariance& c0, const DerivedParams& d);

/// Fixed point of the covariance flow.
QuadCovariance asymptotic_covariance(const DerivedParams& d);

/// det C(infinity) = 1 + f^2 / (lambda1 lambda2).
double asymptotic_det(const DerivedParams& d);

/// Von Neumann entropy of the paramp mode at time t, in nats.
double paramp_entropy(double t, const QuadCovariance& c0, const DerivedParams& d);

/// Entropy of the stationary state.
double asymptotic_entropy(const DerivedParams& d);

/// First-order expansion of det C(t) around t = 0. Valid for t << 1/gamma.
double early_time_det(const QuadCovariance& c0, const DerivedParams& d, double t);

/// On-resonance approximation to det C(t) for a squeezed initial state with
/// large r (e^{-2r} dropped and e^{2 lambda2 t} replaced by e^{-2 gamma t}).
/// Not accurate for t much smaller than 1/gamma.
/// Throws RegimeError if delta_omega != 0 and ContractViolation if r <= 0.
double resonant_transition(double t, double r, const DerivedParams& d);

/// x = 2 |lambda1| e^{2r} / gamma, the only place r enters the approximation.
double transition_parameter(double r, const DerivedParams& d);

/// Time of the maximum of resonant_transition. Throws std::domain_error when
/// the transition parameter x <= 1 (no interior maximum).
double transition_peak_time(double r, const DerivedParams& d);

}  // namespace paramp
