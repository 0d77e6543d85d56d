#include "paramp/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "paramp/errors.hpp"

namespace paramp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// e^{s t} C0 + (gamma N / s)(e^{s t} - 1) for one matrix element, with s = lambda_a + lambda_b.
double evolve_element(double c0, double n, double s, double gamma, double t) {
  const double decay = std::exp(s * t);
  return c0 * decay + gamma * n * std::expm1(s * t) / s;
}

void require_resonant(const DerivedParams& d) {
  if (d.delta_omega != 0.0) {
    throw RegimeError("resonant transition requires delta_omega == 0; got " + fmt(d.delta_omega));
  }
}

}  // namespace

DerivedParams derive(const ParampParams& p) {
  if (!(p.gamma > 0.0)) throw RegimeError("gamma > 0 violated: gamma = " + fmt(p.gamma));
  if (!(p.f > 0.0)) throw RegimeError("f > 0 violated: f = " + fmt(p.f));
  if (!(std::abs(p.delta_omega) < p.f)) {
    throw RegimeError("|delta_omega| < f violated: |delta_omega| = " + fmt(std::abs(p.delta_omega)) +
                      ", f = " + fmt(p.f));
  }
  const double f_prime = std::sqrt((p.f - p.delta_omega) * (p.f + p.delta_omega));
  if (!(f_prime < 0.5 * p.gamma)) {
    throw RegimeError("f' < gamma/2 violated (above threshold): f' = " + fmt(f_prime) +
                      ", gamma/2 = " + fmt(0.5 * p.gamma));
  }

  DerivedParams d;
  d.gamma = p.gamma;
  d.f = p.f;
  d.delta_omega = p.delta_omega;
  d.f_prime = f_prime;
  d.lambda1 = -0.5 * p.gamma + f_prime;
  d.lambda2 = -0.5 * p.gamma - f_prime;
  d.phi = 0.5 * std::atan2(p.delta_omega, f_prime);
  d.norm_N = p.f / f_prime;
  return d;
}

NoiseMatrices noise_matrices(const DerivedParams& d) {
  using namespace std::complex_literals;
  const std::complex<double> e2 = std::polar(1.0, 2.0 * d.phi);
  NoiseMatrices m;
  m.M_hat << 1.0, 1i * std::conj(e2), -1i * e2, 1.0;
  m.M_hat *= d.norm_N;
  const double s = d.sin2phi();
  m.N_hat << 1.0, s, s, 1.0;
  m.N_hat *= d.norm_N;
  m.L_hat << -d.f / d.lambda1, 0.0, 0.0, d.f / d.lambda2;
  return m;
}

QuadCovariance squeezed_initial_covariance(double r, const DerivedParams& d) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const double c = d.cos2phi();
  const double s = d.sin2phi();
  return {d.norm_N * (ch + sh * c), d.norm_N * ch * s, d.norm_N * (ch - sh * c)};
}

QuadCovariance covariance_at(double t, const QuadCovariance& c0, const DerivedParams& d) {
  if (!(t >= 0.0)) throw ContractViolation("covariance_at requires t >= 0; got t = " + fmt(t));
  if (t == 0.0) return c0;
  const double n = d.norm_N;
  const double s = d.sin2phi();
  return {evolve_element(c0.c11, n, 2.0 * d.lambda1, d.gamma, t),
          evolve_element(c0.c12, n * s, d.lambda1 + d.lambda2, d.gamma, t),
          evolve_element(c0.c22, n, 2.0 * d.lambda2, d.gamma, t)};
}

QuadCovariance asymptotic_covariance(const DerivedParams& d) {
  const double n = d.norm_N;
  return {-d.gamma * n / (2.0 * d.lambda1), -d.gamma * n * d.sin2phi() / (d.lambda1 + d.lambda2),
          -d.gamma * n / (2.0 * d.lambda2)};
}

double asymptotic_det(const DerivedParams& d) {
  return 1.0 + d.f * d.f / (d.lambda1 * d.lambda2);
}

double paramp_entropy(double t, const QuadCovariance& c0, const DerivedParams& d) {
  const double det = covariance_at(t, c0, d).det();
  return entropy_from_gamma(std::sqrt(std::max(det, 0.0)));
}

double asymptotic_entropy(const DerivedParams& d) {
  return entropy_from_gamma(std::sqrt(asymptotic_det(d)));
}

double early_time_det(const QuadCovariance& c0, const DerivedParams& d, double t) {
  return c0.det() * (1.0 - 2.0 * d.gamma * t) +
         d.gamma * d.norm_N * t * (c0.c11 + c0.c22 - 2.0 * c0.c12 * d.sin2phi());
}

double transition_parameter(double r, const DerivedParams& d) {
  return 2.0 * std::abs(d.lambda1) * std::exp(2.0 * r) / d.gamma;
}

double resonant_transition(double t, double r, const DerivedParams& d) {
  require_resonant(d);
  if (!(r > 0.0)) throw ContractViolation("resonant_transition requires r > 0; got r = " + fmt(r));
  const double x = transition_parameter(r, d);
  const double prefactor = d.gamma * d.gamma / (4.0 * d.lambda1 * d.lambda2);
  return prefactor * (1.0 - x * std::exp(-2.0 * d.gamma * t) + (x - 1.0) * std::exp(2.0 * d.lambda1 * t));
}

double transition_peak_time(double r, const DerivedParams& d) {
  require_resonant(d);
  if (!(r > 0.0)) throw ContractViolation("transition_peak_time requires r > 0; got r = " + fmt(r));
  const double x = transition_parameter(r, d);
  if (!(x > 1.0)) {
    throw std::domain_error("transition peak undefined: x = " + fmt(x) + " <= 1");
  }
  return std::log(d.gamma * x / (std::abs(d.lambda1) * (x - 1.0))) / (2.0 * std::abs(d.lambda2));
}

}  // namespace paramp
