#include "paramp/flux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paramp/errors.hpp"

namespace paramp {

namespace {

void require_pump(double omega_p) {
  if (!(omega_p > 0.0)) throw ContractViolation("omega_p > 0 violated: omega_p = " + std::to_string(omega_p));
}

SymplecticSpectrum spectrum_for(const DerivedParams& d, const ModeGrid& g, const FluxOptions& opts) {
  if (opts.method == SpectrumMethod::dense) {
    return symplectic_spectrum(output_covariance(d, g, opts.k_max_cap), opts.tol_phys);
  }
  return structured_spectrum(d, g, opts.k_max_cap, opts.tol_phys).spectrum;
}

}  // namespace

OutputEntropy output_entropy(const DerivedParams& d, const ModeGrid& g, const FluxOptions& opts) {
  OutputEntropy out;
  out.spectrum = spectrum_for(d, g, opts);
  out.delta_S_out = entropy_from_spectrum(out.spectrum, opts.tol_phys);
  for (double gamma : out.spectrum.gammas) {
    if (gamma - 1.0 < opts.tol_triv) {
      ++out.n_trivial_modes;
    } else {
      out.nontrivial_gammas.push_back(gamma);
    }
  }
  return out;
}

FluxReport flux_report(const DerivedParams& d, const ModeGrid& g, double omega_p, const FluxOptions& opts) {
  require_pump(omega_p);
  const OutputEntropy entropy = output_entropy(d, g, opts);
  FluxReport r;
  r.delta_t = g.delta_t();
  r.k_max = g.k_max();
  r.delta_S_out = entropy.delta_S_out;
  r.n_trivial_modes = entropy.n_trivial_modes;
  r.nontrivial_gammas = entropy.nontrivial_gammas;
  r.delta_N_out = delta_N(d, g);
  r.number_flux = number_flux(d);
  r.output_power = output_power(d, omega_p);
  r.drive_power = drive_power(d, omega_p);
  r.entropy_flux_estimate = r.delta_S_out / g.delta_t();
  return r;
}

ScanRow converge_in_k_max(const DerivedParams& d, double delta_t, const KMaxSchedule& schedule,
                          const FluxOptions& opts) {
  if (schedule.start < 0 || schedule.cap < schedule.start) {
    throw ContractViolation("k_max schedule needs 0 <= start <= cap");
  }
  ScanRow row;
  row.delta_t = delta_t;
  row.warning = grid_warning(d, ModeGrid(delta_t, 0));

  int k = schedule.start;
  while (true) {
    const double s = output_entropy(d, ModeGrid(delta_t, k), opts).delta_S_out;
    row.history.push_back({k, s});
    row.k_max = k;
    row.delta_S_out = s;
    if (row.history.size() >= 2) {
      const double prev = row.history[row.history.size() - 2].delta_S_out;
      if (std::abs(s - prev) < schedule.cauchy_tol) {
        row.converged = true;
        break;
      }
    }
    if (k >= schedule.cap) break;
    k = std::min(std::max(2 * k, 1), schedule.cap);
  }
  row.entropy_flux = row.delta_S_out / delta_t;
  return row;
}

ScanTable entropy_flux_scan(const DerivedParams& d, std::span<const double> delta_ts,
                            const KMaxSchedule& schedule, const FluxOptions& opts) {
  ScanTable table;
  std::vector<double> xs;
  std::vector<double> ys;
  for (double dt : delta_ts) {
    table.rows.push_back(converge_in_k_max(d, dt, schedule, opts));
    const ScanRow& row = table.rows.back();
    if (row.converged && row.entropy_flux > 0.0) {
      xs.push_back(row.delta_t);
      ys.push_back(row.entropy_flux);
    }
  }
  if (xs.size() >= 2) table.fitted_exponent = fit_log_slope(xs, ys);
  return table;
}

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ContractViolation("fit_log_slope needs >= 2 paired points");
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double number_flux(const DerivedParams& d) {
  return d.gamma * d.f * d.f / (2.0 * d.lambda1 * d.lambda2);
}

double delta_N(const DerivedParams& d, const ModeGrid& g) {
  const double kappa_half = 0.5 * d.gamma * d.f * d.norm_N;
  double sum = 0.0;
  // Small terms last.
  for (int k = g.k_max(); k >= 0; --k) {
    sum += kappa_half * (f_kernel(k, k, 1, d, g) - f_kernel(k, k, 2, d, g));
  }
  return sum;
}

double output_power(const DerivedParams& d, double omega_p) {
  require_pump(omega_p);
  return 0.5 * omega_p * number_flux(d);
}

std::complex<double> stationary_pair_coherence(const DerivedParams& d) {
  // a~ = (1/2) N^{1/2} [X1 e^{-i phi} + i X2 e^{i phi}], so
  // <a~^2> = (N/4) [e^{-2i phi} C11 - e^{2i phi} C22 + i <X1 X2 + X2 X1>].
  using namespace std::complex_literals;
  const QuadCovariance c = asymptotic_covariance(d);
  return 0.25 * d.norm_N *
         (std::polar(1.0, -2.0 * d.phi) * c.c11 - std::polar(1.0, 2.0 * d.phi) * c.c22 + 2.0i * c.c12);
}

double drive_power(const DerivedParams& d, double omega_p) {
  require_pump(omega_p);
  return omega_p * d.f * stationary_pair_coherence(d).real();
}

double naive_blockwise_entropy(const DerivedParams& d, const ModeGrid& g) {
  double s = 0.0;
  for (int k = 0; k <= g.k_max(); ++k) {
    s += entropy_from_gamma(std::sqrt(std::max(diagonal_block(g.omega(k), d).det(), 0.0)));
  }
  return s;
}

}  // namespace paramp
