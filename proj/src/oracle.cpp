#include "ionjcm/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ionjcm::oracle {

namespace {

int cutoff_of(Eigen::Index dimension) {
  if (dimension <= 0 || dimension % 3 != 0) {
    throw std::invalid_argument("full-space dimension must be a positive multiple of 3, got " +
                                std::to_string(dimension));
  }
  return static_cast<int>(dimension / 3) - 1;
}

}  // namespace

TruncatedHamiltonian::TruncatedHamiltonian(const PhysicalParams& params)
    : cutoff_(params.fock_cutoff()), scale_(params.eta() * params.omega_rabi()) {
  const int dim = dimension();
  matrix_ = Eigen::MatrixXcd::Zero(dim, dim);
  const cplx i_unit(0.0, 1.0);
  // <jz, m| H |jz-1, m+1> = -i eta Omega * (-<jz, m| a J_+ |jz-1, m+1>)
  //                       = i eta Omega sqrt(2) sqrt(m+1)
  for (int jz = 0; jz <= 1; ++jz) {
    for (int m = 0; m + 1 <= cutoff_; ++m) {
      const int row = index({jz, m});
      const int col = index({jz - 1, m + 1});
      const cplx element = i_unit * scale_ * std::sqrt(2.0) * std::sqrt(m + 1.0);
      matrix_(row, col) = element;
      matrix_(col, row) = std::conj(element);
    }
  }
}

int TruncatedHamiltonian::index(const BasisLabel& label) const {
  if (label.jz < -1 || label.jz > 1 || label.phonons < 0 || label.phonons > cutoff_) {
    throw std::out_of_range("label outside the truncated space");
  }
  return (label.jz + 1) * (cutoff_ + 1) + label.phonons;
}

BasisLabel TruncatedHamiltonian::label(int index) const {
  if (index < 0 || index >= dimension()) throw std::out_of_range("index outside the truncated space");
  return {index / (cutoff_ + 1) - 1, index % (cutoff_ + 1)};
}

TruncatedHamiltonian build_hamiltonian(const PhysicalParams& params) {
  return TruncatedHamiltonian(params);
}

Evolver::Evolver(const TruncatedHamiltonian& hamiltonian) : scale_(hamiltonian.scale()) {
  // Diagonalize the dimensionless H / (eta Omega) so that eigenvalue errors
  // are relative to O(1) numbers.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.matrix() / scale_);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd Evolver::unitary(double t) const {
  Eigen::VectorXcd phases(eigenvalues_.size());
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
    phases(k) = std::polar(1.0, -eigenvalues_(k) * scale_ * t);
  }
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Eigen::VectorXcd Evolver::evolve(const Eigen::VectorXcd& psi0, double t) const {
  if (psi0.size() != dimension()) throw std::invalid_argument("state dimension mismatch");
  return unitary(t) * psi0;
}

Eigen::MatrixXcd Evolver::evolve(const Eigen::MatrixXcd& rho0, double t) const {
  if (rho0.rows() != dimension() || rho0.cols() != dimension()) {
    throw std::invalid_argument("density matrix dimension mismatch");
  }
  const Eigen::MatrixXcd u = unitary(t);
  return u * rho0 * u.adjoint();
}

Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho0, double t, const PhysicalParams& params) {
  return Evolver(build_hamiltonian(params)).evolve(rho0, t);
}

Eigen::MatrixXcd projector(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

Eigen::VectorXcd coherent_ground_state(cplx alpha, int cutoff) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(3 * (cutoff + 1));
  const double r2 = std::norm(alpha);
  for (int m = 0; m <= cutoff; ++m) {
    cplx amp;
    if (alpha == cplx{}) {
      amp = m == 0 ? 1.0 : 0.0;
    } else {
      amp = std::exp(-0.5 * r2 + static_cast<double>(m) * std::log(alpha) - 0.5 * std::lgamma(m + 1.0));
    }
    psi(m) = amp;  // jz = -1 block comes first
  }
  return psi;
}

Eigen::VectorXcd superposition_vacuum_state(double a, double b, double c, double phi1,
                                            double phi2, int cutoff) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(3 * (cutoff + 1));
  psi(0) = std::polar(c, phi2);
  psi(cutoff + 1) = std::polar(b, phi1);
  psi(2 * (cutoff + 1)) = a;
  return psi;
}

Eigen::MatrixXcd ground_mixture(std::span<const double> weights) {
  const int cutoff = static_cast<int>(weights.size()) - 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3 * (cutoff + 1), 3 * (cutoff + 1));
  for (int m = 0; m <= cutoff; ++m) rho(m, m) = weights[m];
  return rho;
}

MotionalDensityMatrix partial_trace_internal(const Eigen::MatrixXcd& rho_full) {
  const int cutoff = cutoff_of(rho_full.rows());
  const int block = cutoff + 1;
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(block, block);
  for (int s = 0; s < 3; ++s) reduced += rho_full.block(s * block, s * block, block, block);
  const double trace = reduced.trace().real();
  return MotionalDensityMatrix(std::move(reduced), 1.0 - trace);
}

InternalReduction partial_trace_motional(const Eigen::MatrixXcd& rho_full) {
  const int cutoff = cutoff_of(rho_full.rows());
  const int block = cutoff + 1;
  InternalReduction out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out.matrix(r, c) = rho_full.block(r * block, c * block, block, block).trace();
    }
  }
  out.occupations.p_down = out.matrix(0, 0).real();
  out.occupations.p_mid = out.matrix(1, 1).real();
  out.occupations.p_up = out.matrix(2, 2).real();
  out.occupations.truncation_deficit = 1.0 - out.matrix.trace().real();
  return out;
}

double excitation_expectation(const Eigen::MatrixXcd& rho_full) {
  const int cutoff = cutoff_of(rho_full.rows());
  double sum = 0.0;
  for (int k = 0; k < rho_full.rows(); ++k) {
    const int jz = k / (cutoff + 1) - 1;
    const int phonons = k % (cutoff + 1);
    sum += (jz + 1 + phonons) * rho_full(k, k).real();
  }
  return sum;
}

}  // namespace ionjcm::oracle
