#include "ionjcm/observables.hpp"

#include <cmath>

namespace ionjcm {

MotionalMoments moments(const MotionalDensityMatrix& rho) {
  const int dim = rho.dim();
  CompensatedSum n_mean;
  CompensatedComplexSum first;
  CompensatedComplexSum second;
  for (int n = 0; n < dim; ++n) {
    n_mean.add(n * rho(n, n).real());
    if (n + 1 < dim) first.add(std::sqrt(n + 1.0) * rho(n, n + 1));
    if (n + 2 < dim) second.add(std::sqrt((n + 1.0) * (n + 2.0)) * rho(n, n + 2));
  }
  return {n_mean.value(), first.value(), second.value()};
}

double mean_phonons(const MotionalDensityMatrix& rho) { return moments(rho).n_mean; }

double coherent_fraction(const MotionalDensityMatrix& rho) { return std::norm(moments(rho).first); }

QuadratureVariances quadrature_variances(const MotionalMoments& m, double g) {
  const double g2 = g * g;
  QuadratureVariances out;
  out.n_mean = m.n_mean;
  out.coherent_fraction = std::norm(m.first);
  out.var_x = 2.0 * g2 * m.n_mean + 2.0 * g2 * m.second.real() -
              4.0 * g2 * m.first.real() * m.first.real();
  out.var_p = 2.0 * g2 * m.n_mean - 2.0 * g2 * m.second.real() -
              4.0 * g2 * m.first.imag() * m.first.imag();
  if (m.n_mean > 0.0) out.gamma = out.coherent_fraction / m.n_mean;
  out.x_squeezed = out.var_x < 0.0;
  out.p_squeezed = out.var_p < 0.0;
  return out;
}

QuadratureVariances quadrature_variances(const MotionalDensityMatrix& rho, double g) {
  return quadrature_variances(moments(rho), g);
}

}  // namespace ionjcm
