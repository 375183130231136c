// Brute-force reference dynamics.
//
// Builds H = -i eta Omega (a^dag J_- - a J_+) on the product space
// {jz = -1, 0, +1} x {phonons 0..cutoff}, drops couplings that leave the
// cutoff, and evolves with exp(-iHt) from a full eigendecomposition of H.
// Nothing here uses the per-block formulas in propagator/closed_form.

#ifndef IONJCM_ORACLE_HPP
#define IONJCM_ORACLE_HPP

#include <span>

#include <Eigen/Dense>

#include "ionjcm/model.hpp"

namespace ionjcm::oracle {

class TruncatedHamiltonian {
 public:
  explicit TruncatedHamiltonian(const PhysicalParams& params);

  int cutoff() const { return cutoff_; }
  int dimension() const { return 3 * (cutoff_ + 1); }
  /// Row/column of a label: (jz + 1) * (cutoff + 1) + phonons.
  int index(const BasisLabel& label) const;
  BasisLabel label(int index) const;

  /// In rad/s.
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  /// Coupling unit eta * Omega.
  double scale() const { return scale_; }

 private:
  int cutoff_;
  double scale_;
  Eigen::MatrixXcd matrix_;
};

TruncatedHamiltonian build_hamiltonian(const PhysicalParams& params);

/// Caches the eigendecomposition of H for repeated evolution.
class Evolver {
 public:
  explicit Evolver(const TruncatedHamiltonian& hamiltonian);

  int dimension() const { return static_cast<int>(vectors_.rows()); }
  /// exp(-iHt)
  Eigen::MatrixXcd unitary(double t) const;
  /// Throws std::invalid_argument on a dimension mismatch.
  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const;
  Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho0, double t) const;

 private:
  double scale_;
  Eigen::VectorXd eigenvalues_;  // of H / scale
  Eigen::MatrixXcd vectors_;
};

/// U rho0 U^dag; builds H and its eigendecomposition on every call.
Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho0, double t, const PhysicalParams& params);

/// |psi><psi|
Eigen::MatrixXcd projector(const Eigen::VectorXcd& psi);

/// |-1> (x) |alpha> truncated at the cutoff; amplitudes from
/// exp(-|alpha|^2/2 + m log alpha - lgamma(m+1)/2).
Eigen::VectorXcd coherent_ground_state(cplx alpha, int cutoff);
/// (a|+1> + b e^{i phi1}|0> + c e^{i phi2}|-1>) (x) |0>.
Eigen::VectorXcd superposition_vacuum_state(double a, double b, double c, double phi1,
                                            double phi2, int cutoff);
/// sum_m w(m) |-1, m><-1, m|; weights.size() == cutoff + 1.
Eigen::MatrixXcd ground_mixture(std::span<const double> weights);

struct InternalReduction {
  InternalOccupations occupations;
  /// Full 3x3 internal matrix, rows/columns ordered jz = -1, 0, +1.
  Eigen::Matrix3cd matrix;
};

/// Trace over the internal states.
MotionalDensityMatrix partial_trace_internal(const Eigen::MatrixXcd& rho_full);
/// Trace over the phonon mode.
InternalReduction partial_trace_motional(const Eigen::MatrixXcd& rho_full);

/// Tr(rho N_exc) with N_exc = (jz + 1) + phonons.
double excitation_expectation(const Eigen::MatrixXcd& rho_full);

}  // namespace ionjcm::oracle

#endif  // IONJCM_ORACLE_HPP
