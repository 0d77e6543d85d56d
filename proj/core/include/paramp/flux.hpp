#pragma once

// Entropy, number and energy fluxes carried by the output line at late times.

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paramp/gaussian.hpp"
#include "paramp/model.hpp"
#include "paramp/output.hpp"

namespace paramp {

inline constexpr double kDefaultTrivialTol = 1e-9;

enum class SpectrumMethod { dense, structured };

struct FluxOptions {
  SpectrumMethod method = SpectrumMethod::structured;
  double tol_triv = kDefaultTrivialTol;  // gamma - 1 below this counts as a pure mode
  double tol_phys = kDefaultPhysTol;
  int k_max_cap = kDefaultKMaxCap;
};

struct OutputEntropy {
  double delta_S_out = 0.0;
  std::size_t n_trivial_modes = 0;
  std::vector<double> nontrivial_gammas;  // descending
  SymplecticSpectrum spectrum;
};

/// Entanglement entropy of one window of the output.
OutputEntropy output_entropy(const DerivedParams& d, const ModeGrid& g, const FluxOptions& opts = {});

struct FluxReport {
  double delta_t = 0.0;
  int k_max = 0;
  double delta_S_out = 0.0;
  std::size_t n_trivial_modes = 0;
  std::vector<double> nontrivial_gammas;
  double delta_N_out = 0.0;            // quanta per window
  double number_flux = 0.0;            // quanta per unit time
  double output_power = 0.0;
  double drive_power = 0.0;
  double entropy_flux_estimate = 0.0;  // delta_S_out / delta_t
};

FluxReport flux_report(const DerivedParams& d, const ModeGrid& g, double omega_p,
                       const FluxOptions& opts = {});

// k_max doublings from `start` until successive entropies differ by less
// than `cauchy_tol`, or `cap` is reached.
struct KMaxSchedule {
  int start = 64;
  int cap = kDefaultKMaxCap;
  double cauchy_tol = 1e-3;
};

struct ConvergencePoint {
  int k_max = 0;
  double delta_S_out = 0.0;
};

struct ScanRow {
  double delta_t = 0.0;
  int k_max = 0;  // last k_max evaluated
  double delta_S_out = 0.0;
  double entropy_flux = 0.0;
  bool converged = false;
  std::vector<ConvergencePoint> history;
  std::optional<std::string> warning;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  /// Least-squares slope of log(entropy_flux) against log(delta_t) over the
  /// converged rows; NaN with fewer than two. A vanishing flux shows up as -1.
  double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
};

ScanRow converge_in_k_max(const DerivedParams& d, double delta_t, const KMaxSchedule& schedule,
                          const FluxOptions& opts = {});

ScanTable entropy_flux_scan(const DerivedParams& d, std::span<const double> delta_ts,
                            const KMaxSchedule& schedule = {}, const FluxOptions& opts = {});

/// Slope of the least-squares line through (log x, log y).
double fit_log_slope(std::span<const double> x, std::span<const double> y);

/// Gamma f^2 / (2 lambda1 lambda2).
double number_flux(const DerivedParams& d);

/// Sum over the window's harmonics of <B_k^dagger B_k>.
double delta_N(const DerivedParams& d, const ModeGrid& g);

/// (omega_p / 2) * number_flux. Throws ContractViolation unless omega_p > 0.
double output_power(const DerivedParams& d, double omega_p);

/// Stationary <a~^2> of the paramp mode, rebuilt from asymptotic_covariance.
std::complex<double> stationary_pair_coherence(const DerivedParams& d);

/// Power the classical pump delivers to the paramp in the steady state:
/// omega_p f Re<a~^2>. Throws ContractViolation unless omega_p > 0.
double drive_power(const DerivedParams& d, double omega_p);

/// Entropy obtained by keeping only the per-harmonic diagonal blocks. Each
/// block is pure, so this is zero up to rounding.
double naive_blockwise_entropy(const DerivedParams& d, const ModeGrid& g);

}  // namespace paramp
