#include "ionjcm/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ionjcm {

PhysicalParams::PhysicalParams(double eta, double omega_rabi, double g, int fock_cutoff)
    : eta_(eta), omega_rabi_(omega_rabi), g_(g), fock_cutoff_(fock_cutoff),
      xi_(std::sqrt(2.0) * eta * omega_rabi) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be positive, got " + std::to_string(eta));
  }
  if (!(omega_rabi > 0.0) || !std::isfinite(omega_rabi)) {
    throw std::invalid_argument("omega_rabi must be positive, got " + std::to_string(omega_rabi));
  }
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("g must be positive, got " + std::to_string(g));
  }
  if (fock_cutoff < 2) {
    throw std::invalid_argument("fock_cutoff must be >= 2, got " + std::to_string(fock_cutoff));
  }
}

PhysicalParams PhysicalParams::defaults(int fock_cutoff) {
  return PhysicalParams(kDefaultEta, kDefaultOmegaRabi, 1.0, fock_cutoff);
}

PhysicalParams PhysicalParams::with_cutoff(int fock_cutoff) const {
  return PhysicalParams(eta_, omega_rabi_, g_, fock_cutoff);
}

int default_cutoff(double mean_phonons) {
  if (!(mean_phonons >= 0.0)) {
    throw std::invalid_argument("mean phonon number must be non-negative");
  }
  return static_cast<int>(std::ceil(mean_phonons + 8.0 * std::sqrt(mean_phonons) + 12.0));
}

int total_excitation(const BasisLabel& label) {
  if (label.jz < -1 || label.jz > 1 || label.phonons < 0) {
    throw std::invalid_argument("invalid basis label (jz=" + std::to_string(label.jz) +
                                ", phonons=" + std::to_string(label.phonons) + ")");
  }
  return label.jz + 1 + label.phonons;
}

std::vector<BasisLabel> subspace_members(int n) {
  if (n < 0) {
    throw std::invalid_argument("excitation index must be non-negative, got " + std::to_string(n));
  }
  if (n == 0) return {{-1, 0}};
  if (n == 1) return {{0, 0}, {-1, 1}};
  return {{+1, n - 2}, {0, n - 1}, {-1, n}};
}

MotionalDensityMatrix::MotionalDensityMatrix(int cutoff)
    : entries_(Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1)) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
}

MotionalDensityMatrix::MotionalDensityMatrix(Eigen::MatrixXcd entries, double truncation_deficit)
    : entries_(std::move(entries)), truncation_deficit_(truncation_deficit) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("motional density matrix must be square and non-empty");
  }
  const Eigen::Index n = entries_.rows();
  for (Eigen::Index l = 0; l < n; ++l) {
    entries_(l, l) = entries_(l, l).real();
    for (Eigen::Index m = l + 1; m < n; ++m) entries_(m, l) = std::conj(entries_(l, m));
  }
}

double MotionalDensityMatrix::trace() const {
  CompensatedSum s;
  for (Eigen::Index l = 0; l < entries_.rows(); ++l) s.add(entries_(l, l).real());
  return s.value();
}

double MotionalDensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace ionjcm
