// Phonon-mode observables: mean number, coherent fraction, coherence ratio
// and normally ordered quadrature variances for x = g(a + a^dag),
// p = ig(a - a^dag).

#ifndef IONJCM_OBSERVABLES_HPP
#define IONJCM_OBSERVABLES_HPP

#include <optional>

#include "ionjcm/model.hpp"

namespace ionjcm {

/// The three sums every observable here is built from.
struct MotionalMoments {
  double n_mean = 0.0;
  /// sum_n sqrt(n+1) rho(n, n+1)
  cplx first{};
  /// sum_n sqrt((n+1)(n+2)) rho(n, n+2)
  cplx second{};
};

struct QuadratureVariances {
  double var_x = 0.0;  // <:(dx)^2:>
  double var_p = 0.0;  // <:(dp)^2:>
  double n_mean = 0.0;
  double coherent_fraction = 0.0;
  /// coherent_fraction / n_mean; absent when n_mean == 0.
  std::optional<double> gamma;
  bool x_squeezed = false;
  bool p_squeezed = false;
};

MotionalMoments moments(const MotionalDensityMatrix& rho);

double mean_phonons(const MotionalDensityMatrix& rho);
/// |sum_n sqrt(n+1) rho(n, n+1)|^2
double coherent_fraction(const MotionalDensityMatrix& rho);

QuadratureVariances quadrature_variances(const MotionalMoments& m, double g);
QuadratureVariances quadrature_variances(const MotionalDensityMatrix& rho, double g);

}  // namespace ionjcm

#endif  // IONJCM_OBSERVABLES_HPP
