#include "paramp/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "paramp/errors.hpp"

namespace paramp {

FockSpace::FockSpace(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff), dim_(1) {
  if (n_modes < 1 || n_modes > kMaxFockModes) {
    throw ContractViolation("1 <= n_modes <= 4 violated: n_modes = " + std::to_string(n_modes));
  }
  if (cutoff < 0 || cutoff > kMaxFockCutoff) {
    throw ContractViolation("0 <= cutoff <= 4 violated: cutoff = " + std::to_string(cutoff));
  }
  for (int i = 0; i < n_modes; ++i) dim_ *= static_cast<std::size_t>(cutoff + 1);
}

std::size_t FockSpace::index(const Occupation& occ) const {
  if (static_cast<int>(occ.size()) != n_modes_) throw ContractViolation("occupation tuple has wrong length");
  std::size_t idx = 0;
  for (int n : occ) {
    if (n < 0 || n > cutoff_) throw ContractViolation("occupation " + std::to_string(n) + " outside [0, cutoff]");
    idx = idx * static_cast<std::size_t>(cutoff_ + 1) + static_cast<std::size_t>(n);
  }
  return idx;
}

Occupation FockSpace::occupation(std::size_t index) const {
  Occupation occ(static_cast<std::size_t>(n_modes_));
  const auto base = static_cast<std::size_t>(cutoff_ + 1);
  for (int i = n_modes_ - 1; i >= 0; --i) {
    occ[static_cast<std::size_t>(i)] = static_cast<int>(index % base);
    index /= base;
  }
  return occ;
}

Eigen::MatrixXcd FockSpace::annihilation(int mode) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t col = 0; col < dim_; ++col) {
    Occupation occ = occupation(col);
    const int k = occ[static_cast<std::size_t>(mode)];
    if (k == 0) continue;
    occ[static_cast<std::size_t>(mode)] = k - 1;
    a(static_cast<Eigen::Index>(index(occ)), static_cast<Eigen::Index>(col)) = std::sqrt(static_cast<double>(k));
  }
  return a;
}

Eigen::MatrixXcd FockSpace::number(int mode) const {
  const Eigen::MatrixXcd a = annihilation(mode);
  return a.adjoint() * a;
}

FockState::FockState(FockSpace space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw ContractViolation("amplitude vector length does not match Fock space dimension");
  }
}

FockState FockState::vacuum(const FockSpace& space) {
  return basis(space, Occupation(static_cast<std::size_t>(space.n_modes()), 0));
}

FockState FockState::basis(const FockSpace& space, const Occupation& occ) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(space.index(occ))) = 1.0;
  return {space, std::move(v)};
}

std::complex<double> FockState::amplitude(const Occupation& occ) const {
  return amplitudes_(static_cast<Eigen::Index>(space_.index(occ)));
}

FockState FockState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw ContractViolation("cannot normalize the zero state");
  return {space_, amplitudes_ / n};
}

FockState FockState::create(int mode) const {
  for (std::size_t i = 0; i < space_.dim(); ++i) {
    if (space_.occupation(i)[static_cast<std::size_t>(mode)] == space_.cutoff() &&
        std::abs(amplitudes_(static_cast<Eigen::Index>(i))) > kTruncationTol) {
      throw TruncationError("creation on mode " + std::to_string(mode) + " would exceed cutoff " +
                            std::to_string(space_.cutoff()));
    }
  }
  return apply(space_.creation(mode));
}

FockState FockState::apply(const Eigen::MatrixXcd& op) const { return {space_, op * amplitudes_}; }

std::complex<double> FockState::expectation(const Eigen::MatrixXcd& op) const {
  return amplitudes_.dot(op * amplitudes_);
}

std::complex<double> FockState::inner(const FockState& other) const {
  return amplitudes_.dot(other.amplitudes_);
}

FockState FockState::operator+(const FockState& other) const {
  if (!(space_ == other.space_)) throw ContractViolation("adding states from different Fock spaces");
  return {space_, amplitudes_ + other.amplitudes_};
}

FockState FockState::operator*(std::complex<double> c) const { return {space_, amplitudes_ * c}; }

Eigen::MatrixXcd beamsplitter_unitary(const FockSpace& space, int mode_a, int mode_b, double angle) {
  const Eigen::MatrixXcd a = space.annihilation(mode_a);
  const Eigen::MatrixXcd b = space.annihilation(mode_b);
  const Eigen::MatrixXcd generator = angle * (b.adjoint() * a - a.adjoint() * b);
  return generator.exp();
}

FockState apply_beamsplitter(const FockState& state, int mode_a, int mode_b, double angle) {
  const FockSpace& space = state.space();
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const Occupation occ = space.occupation(i);
    const int total = occ[static_cast<std::size_t>(mode_a)] + occ[static_cast<std::size_t>(mode_b)];
    if (total > space.cutoff() && std::abs(state.amplitudes()(static_cast<Eigen::Index>(i))) > kTruncationTol) {
      throw TruncationError("state has weight in a " + std::to_string(total) +
                            "-photon sector that cutoff " + std::to_string(space.cutoff()) + " truncates");
    }
  }
  return state.apply(beamsplitter_unitary(space, mode_a, mode_b, angle));
}

Eigen::MatrixXcd reduced_density_matrix(const FockState& state, const std::vector<int>& keep) {
  const FockSpace& space = state.space();
  const auto base = static_cast<std::size_t>(space.cutoff() + 1);
  std::size_t keep_dim = 1;
  for (std::size_t i = 0; i < keep.size(); ++i) keep_dim *= base;

  std::vector<int> traced;
  for (int m = 0; m < space.n_modes(); ++m) {
    if (std::find(keep.begin(), keep.end(), m) == keep.end()) traced.push_back(m);
  }

  auto sub_index = [&](const Occupation& occ, const std::vector<int>& modes) {
    std::size_t idx = 0;
    for (int m : modes) idx = idx * base + static_cast<std::size_t>(occ[static_cast<std::size_t>(m)]);
    return idx;
  };

  // psi as a (keep x traced) matrix, rho = psi psi^dagger.
  std::size_t traced_dim = space.dim() / keep_dim;
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(keep_dim),
                                                static_cast<Eigen::Index>(traced_dim));
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const Occupation occ = space.occupation(i);
    psi(static_cast<Eigen::Index>(sub_index(occ, keep)), static_cast<Eigen::Index>(sub_index(occ, traced))) =
        state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  return psi * psi.adjoint();
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double p = solver.eigenvalues()(i);
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

ProjectionResult project_modes(const FockState& state, const std::vector<int>& modes, const FockState& target) {
  const FockSpace& space = state.space();
  if (target.space().n_modes() != static_cast<int>(modes.size()) || target.space().cutoff() != space.cutoff()) {
    throw ContractViolation("projection target must live on the projected modes with the same cutoff");
  }
  std::vector<int> rest;
  for (int m = 0; m < space.n_modes(); ++m) {
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) rest.push_back(m);
  }
  if (rest.empty()) throw ContractViolation("projection must leave at least one mode");

  const FockSpace rest_space(static_cast<int>(rest.size()), space.cutoff());
  Eigen::VectorXcd post = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rest_space.dim()));
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const Occupation occ = space.occupation(i);
    Occupation proj_occ;
    Occupation rest_occ;
    for (int m : modes) proj_occ.push_back(occ[static_cast<std::size_t>(m)]);
    for (int m : rest) rest_occ.push_back(occ[static_cast<std::size_t>(m)]);
    post(static_cast<Eigen::Index>(rest_space.index(rest_occ))) +=
        std::conj(target.amplitude(proj_occ)) * state.amplitudes()(static_cast<Eigen::Index>(i));
  }

  const double total = state.amplitudes().squaredNorm();
  const double prob = post.squaredNorm();
  if (prob == 0.0) throw ContractViolation("projection has zero probability");

  // ||(1 - P) psi||^2 = ||psi||^2 - ||P psi||^2 for an orthogonal projector.
  return {prob / total, (total - prob) / total, FockState(rest_space, post).normalized()};
}

TransferResult beamsplitter_transfer(std::complex<double> c1, std::complex<double> c2, int cutoff) {
  if (c1 == 0.0 && c2 == 0.0) throw ContractViolation("c1 and c2 cannot both be zero");
  const FockSpace space(2, cutoff);
  constexpr int mode_a = 0;
  constexpr int mode_b = 1;

  const FockState vac = FockState::vacuum(space);
  FockState pair = vac.create(mode_a).create(mode_a);
  const FockState before = (vac * c1 + pair * c2).normalized();
  const FockState after = apply_beamsplitter(before, mode_a, mode_b, 0.5 * std::numbers::pi);

  const Eigen::MatrixXcd b = space.annihilation(mode_b);
  TransferResult r{after.expectation(b * b),
                   von_neumann_entropy(reduced_density_matrix(after, {mode_a})),
                   after.expectation(space.number(mode_a)).real(),
                   before,
                   after};
  return r;
}

FockState swap_target_state() {
  const FockSpace space(2, 1);
  const FockState vac = FockState::vacuum(space);
  return ((vac + vac.create(0).create(1)) * (1.0 / std::numbers::sqrt2));
}

SwapResult entanglement_swap() {
  // Mode order (a1, a2, b1, b2).
  const FockSpace space(4, 1);
  constexpr int a1 = 0, a2 = 1, b1 = 2, b2 = 3;
  const FockState vac = FockState::vacuum(space);
  const FockState second = vac + vac.create(b2).create(a2);
  const FockState psi = (second + second.create(b1).create(a1)) * 0.5;

  const FockState phi_a = swap_target_state();  // same form on (a1, a2)
  ProjectionResult proj = project_modes(psi, {a1, a2}, phi_a);

  SwapResult r{proj.probability, proj.complement_probability, proj.post_state, 0.0, 0.0};
  r.target_fidelity = std::norm(swap_target_state().inner(r.post_state));
  r.b_pair_entanglement = von_neumann_entropy(reduced_density_matrix(r.post_state, {0}));
  return r;
}

}  // namespace paramp
