// Closed-form dynamics for the two initial-condition families:
//
//   case 1: ground internal state times a diagonal or coherent phonon state
//   case 2: internal superposition a|+1> + b e^{i phi1}|0> + c e^{i phi2}|-1>
//           times the phonon vacuum
//
// Only the excitation blocks n = 0, 1, 2 are populated in case 2, so its
// motional matrix has at most seven non-zero entries.

#ifndef IONJCM_CLOSED_FORM_HPP
#define IONJCM_CLOSED_FORM_HPP

#include "ionjcm/model.hpp"
#include "ionjcm/observables.hpp"
#include "ionjcm/states.hpp"

namespace ionjcm {

struct EvolutionPoint {
  double t = 0.0;
  InternalOccupations occupations;
  MotionalDensityMatrix motional{2};
};

/// Internal populations for the ground internal state and any diagonal
/// phonon distribution, with beta_n = sqrt(2n-1) xi t:
///   p_up   = sum n(n-1)/(2n-1)^2 (1 - cos beta_n)^2 p(n)
///   p_mid  = sum n/(2n-1) sin^2 beta_n p(n)
///   p_down = p(0) + sum (n cos beta_n + n - 1)^2/(2n-1)^2 p(n)
InternalOccupations occupations_case1(const PhononDistribution& dist, double t,
                                      const PhysicalParams& params);
/// Poisson weights |q(m)|^2 truncated at params.fock_cutoff().
InternalOccupations occupations_case1(const CaseOneInit& init, double t,
                                      const PhysicalParams& params);

InternalOccupations occupations_case2(const CaseTwoInit& init, double t,
                                      const PhysicalParams& params);

/// rho(l, m) = sum over the three internal branches of v(l) v*(m), where
///   v_up(l)   = sqrt((l+1)(l+2))/(2l+3) (1 - cos beta_{l+2}) q(l+2)
///   v_mid(l)  = sqrt((l+1)/(2l+1)) sin beta_{l+1} q(l+1)
///   v_down(l) = (l cos beta_l + l - 1)/(2l-1) q(l),   v_down(0) = q(0)
/// with q truncated at the cutoff.
MotionalDensityMatrix motional_case1(const CaseOneInit& init, double t,
                                     const PhysicalParams& params);

/// Diagonal motional state reached from a diagonal phonon distribution.
MotionalDensityMatrix motional_distribution(const PhononDistribution& dist, double t,
                                            const PhysicalParams& params);

/// Seven entries; the remaining (cutoff+1)^2 - 7 are exactly zero.
MotionalDensityMatrix motional_case2(const CaseTwoInit& init, double t,
                                     const PhysicalParams& params);

/// moments(motional_case1(...)) in O(cutoff).
MotionalMoments case1_moments(const CaseOneInit& init, double t, const PhysicalParams& params);
/// moments(motional_case2(...)) without building the matrix.
MotionalMoments case2_moments(const CaseTwoInit& init, double t, const PhysicalParams& params);

/// Weak-field coherent state: rho00 = 1 - n, rho11 = n, rho01 = e^{i phase} sqrt(n).
/// Throws std::invalid_argument unless 0 <= n_mean < 1.
MotionalDensityMatrix limit_coherent_form(double n_mean, double phase, int cutoff = 2);

/// Weak-field squeezed vacuum: rho00 = 1 - n/2, rho22 = n/2,
/// rho02 = e^{i phase} sqrt(n/2).
MotionalDensityMatrix limit_squeezed_form(double n_mean, double phase, int cutoff = 2);

/// Occupations and motional state for any supported initial condition.
EvolutionPoint evolution_point(const InitialCondition& init, double t, const PhysicalParams& params);

}  // namespace ionjcm

#endif  // IONJCM_CLOSED_FORM_HPP
