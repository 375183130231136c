// Shared parameters, basis labelling and numeric types for the two-ion
// red-sideband model.
//
// The model works in the interaction picture with
//
//     H = -i eta Omega (a^dag J_- - a J_+),
//
// where J_+- act on the collective two-ion states |+1> (both excited),
// |0> (one excited, symmetric) and |-1> (both ground) with
// J_-|+1> = sqrt(2)|0>, J_-|0> = sqrt(2)|-1>. H conserves the total
// excitation (jz + 1) + phonons, so the state space splits into blocks of
// dimension at most three.

#ifndef IONJCM_MODEL_HPP
#define IONJCM_MODEL_HPP

#include <complex>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace ionjcm {

using cplx = std::complex<double>;

inline constexpr double kDefaultEta = 0.1;
inline constexpr double kDefaultOmegaHz = 5.0e5;
inline constexpr double kDefaultOmegaRabi = 2.0 * std::numbers::pi * kDefaultOmegaHz;

/// Tail mass below which a truncated distribution counts as complete.
inline constexpr double kTailTolerance = 1e-12;

class PhysicalParams {
 public:
  /// Throws std::invalid_argument unless eta, omega_rabi, g > 0 and
  /// fock_cutoff >= 2.
  PhysicalParams(double eta, double omega_rabi, double g, int fock_cutoff);

  static PhysicalParams defaults(int fock_cutoff);

  double eta() const { return eta_; }
  /// Rabi frequency in rad/s.
  double omega_rabi() const { return omega_rabi_; }
  double g() const { return g_; }
  int fock_cutoff() const { return fock_cutoff_; }
  /// sqrt(2) * eta * Omega, the single-quantum Rabi frequency.
  double xi() const { return xi_; }

  PhysicalParams with_cutoff(int fock_cutoff) const;

  bool operator==(const PhysicalParams&) const = default;

 private:
  double eta_;
  double omega_rabi_;
  double g_;
  int fock_cutoff_;
  double xi_;
};

/// ceil(mean + 8 sqrt(mean) + 12); keeps the Poisson tail below 1e-12 for
/// means up to 16.
int default_cutoff(double mean_phonons);

struct BasisLabel {
  int jz;       // -1, 0 or +1
  int phonons;  // >= 0

  bool operator==(const BasisLabel&) const = default;
};

/// (jz + 1) + phonons. Throws std::invalid_argument on an invalid label.
int total_excitation(const BasisLabel& label);

/// Members of the excitation-n block in the order
/// (+1, n-2), (0, n-1), (-1, n); shorter for n < 2.
std::vector<BasisLabel> subspace_members(int n);

/// Populations of the collective internal states.
struct InternalOccupations {
  double p_up = 0.0;    // jz = +1
  double p_mid = 0.0;   // jz = 0
  double p_down = 0.0;  // jz = -1
  /// Probability weight lost to the phonon cutoff.
  double truncation_deficit = 0.0;

  double sum() const { return p_up + p_mid + p_down; }
};

/// Reduced density matrix of the phonon mode, rho(l, m) = <l|rho|m>,
/// 0 <= l, m <= cutoff.
class MotionalDensityMatrix {
 public:
  explicit MotionalDensityMatrix(int cutoff);
  /// Adopts `entries`, enforcing exact Hermiticity from the upper triangle.
  MotionalDensityMatrix(Eigen::MatrixXcd entries, double truncation_deficit);

  int cutoff() const { return static_cast<int>(entries_.rows()) - 1; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  cplx operator()(int l, int m) const { return entries_(l, m); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  double truncation_deficit() const { return truncation_deficit_; }
  double trace() const;
  double min_eigenvalue() const;

 private:
  Eigen::MatrixXcd entries_;
  double truncation_deficit_ = 0.0;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(cplx value) {
    re_.add(value.real());
    im_.add(value.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace ionjcm

#endif  // IONJCM_MODEL_HPP
