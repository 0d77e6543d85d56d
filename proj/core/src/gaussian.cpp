#include "paramp/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <string>

#include "paramp/errors.hpp"

namespace paramp {

namespace {

constexpr double kSymmetryTol = 1e-12;

double clamp_gamma(double g, double tol_phys) {
  if (g < 1.0 && g >= 1.0 - tol_phys) return 1.0;
  return g;
}

}  // namespace

Eigen::Matrix2d QuadCovariance::matrix() const {
  Eigen::Matrix2d m;
  m << c11, c12, c12, c22;
  return m;
}

QuadCovariance QuadCovariance::from_matrix(const Eigen::Matrix2d& m) {
  return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
}

MultimodeCovariance::MultimodeCovariance(Eigen::MatrixXd m) : entries_(std::move(m)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0 || entries_.rows() % 2 != 0) {
    throw ContractViolation("covariance must be square with even, nonzero size; got " +
                            std::to_string(entries_.rows()) + "x" +
                            std::to_string(entries_.cols()));
  }
  const double scale = std::max(entries_.cwiseAbs().maxCoeff(), 1e-300);
  const double defect = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (defect > kSymmetryTol * scale) {
    throw ContractViolation("covariance is not symmetric: relative defect " +
                            std::to_string(defect / scale) + " > 1e-12");
  }
  entries_ = (0.5 * (entries_ + entries_.transpose())).eval();
}

MultimodeCovariance::MultimodeCovariance(const QuadCovariance& q)
    : MultimodeCovariance(Eigen::MatrixXd(q.matrix())) {}

MultimodeCovariance MultimodeCovariance::vacuum(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return MultimodeCovariance(Eigen::MatrixXd::Identity(dim, dim));
}

QuadCovariance MultimodeCovariance::mode_block(std::size_t k) const {
  const auto i = static_cast<Eigen::Index>(2 * k);
  return QuadCovariance::from_matrix(entries_.block<2, 2>(i, i));
}

MultimodeCovariance MultimodeCovariance::permuted(const std::vector<std::size_t>& perm) const {
  const std::size_t n = n_modes();
  if (perm.size() != n) throw ContractViolation("permutation length must equal n_modes");
  Eigen::MatrixXd out(entries_.rows(), entries_.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = entries_.block<2, 2>(2 * perm[i], 2 * perm[j]);
    }
  }
  return MultimodeCovariance(std::move(out));
}

MultimodeCovariance direct_sum(const MultimodeCovariance& a, const MultimodeCovariance& b) {
  const auto na = a.entries().rows();
  const auto nb = b.entries().rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(na + nb, na + nb);
  m.topLeftCorner(na, na) = a.entries();
  m.bottomRightCorner(nb, nb) = b.entries();
  return MultimodeCovariance(std::move(m));
}

double SymplecticSpectrum::min_gamma() const {
  return gammas.empty() ? 1.0 : *std::min_element(gammas.begin(), gammas.end());
}

std::vector<double> SymplecticSpectrum::occupancies() const {
  std::vector<double> n(gammas.size());
  std::transform(gammas.begin(), gammas.end(), n.begin(),
                 [](double g) { return std::max(0.0, 0.5 * (g - 1.0)); });
  return n;
}

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    j(k, k + 1) = 1.0;
    j(k + 1, k) = -1.0;
  }
  return j;
}

SymplecticSpectrum symplectic_spectrum(const MultimodeCovariance& c, double tol_phys) {
  const std::size_t n = c.n_modes();
  const auto dim = static_cast<Eigen::Index>(2 * n);

  // J C without forming J: row 2k of J C is row 2k+1 of C, row 2k+1 is -row 2k.
  Eigen::MatrixXd jc(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    jc.row(k) = c.entries().row(k + 1);
    jc.row(k + 1) = -c.entries().row(k);
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(jc, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigen solver did not converge for J*C", static_cast<std::size_t>(dim));
  }

  std::vector<double> imag(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) imag[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i).imag());
  std::sort(imag.begin(), imag.end(), std::greater<>());

  SymplecticSpectrum spec;
  spec.gammas.reserve(n);
  for (std::size_t i = 0; i < imag.size(); i += 2) spec.gammas.push_back(clamp_gamma(imag[i], tol_phys));
  return spec;
}

double mode_entropy(double occupancy) {
  if (occupancy <= 0.0) return 0.0;
  return (occupancy + 1.0) * std::log1p(occupancy) - occupancy * std::log(occupancy);
}

double entropy_from_gamma(double gamma, double tol_phys) {
  if (gamma < 1.0 - tol_phys) {
    throw ContractViolation("symplectic eigenvalue " + std::to_string(gamma) +
                            " is below 1 - tol_phys (unphysical state)");
  }
  return mode_entropy(std::max(0.0, 0.5 * (gamma - 1.0)));
}

double entropy_from_spectrum(const SymplecticSpectrum& spec, double tol_phys) {
  double s = 0.0;
  for (double g : spec.gammas) s += entropy_from_gamma(g, tol_phys);
  return s;
}

bool is_physical(const MultimodeCovariance& c, double tol_phys) {
  return symplectic_spectrum(c, tol_phys).min_gamma() >= 1.0 - tol_phys;
}

}  // namespace paramp
