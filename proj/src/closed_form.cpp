#include "ionjcm/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ionjcm {

namespace {

// cos/sin of beta_k = sqrt(2k-1) xi t for k = 1..max_level; index 0 unused.
struct RabiTable {
  std::vector<double> cos;
  std::vector<double> sin;

  RabiTable(int max_level, double xi_t) : cos(max_level + 1, 1.0), sin(max_level + 1, 0.0) {
    for (int k = 1; k <= max_level; ++k) {
      const double beta = std::sqrt(2.0 * k - 1.0) * xi_t;
      cos[k] = std::cos(beta);
      sin[k] = std::sin(beta);
    }
  }
};

// Amplitude factors of |-1, n> -> |jz, n - 1 - jz> for block n.
double down_to_up(int n, const RabiTable& tr) {
  if (n < 2) return 0.0;
  const double dn = n;
  return std::sqrt(dn * (dn - 1.0)) / (2.0 * dn - 1.0) * (1.0 - tr.cos[n]);
}

double down_to_mid(int n, const RabiTable& tr) {
  if (n < 1) return 0.0;
  const double dn = n;
  return std::sqrt(dn / (2.0 * dn - 1.0)) * tr.sin[n];
}

// At n = 0 the block is the identity; the general expression has a zero
// coefficient in front of an imaginary-frequency cosine, so it is never
// evaluated there.
double down_to_down(int n, const RabiTable& tr) {
  if (n == 0) return 1.0;
  const double dn = n;
  return (dn * tr.cos[n] + dn - 1.0) / (2.0 * dn - 1.0);
}

struct Case1Branches {
  std::vector<cplx> up;
  std::vector<cplx> mid;
  std::vector<cplx> down;
};

Case1Branches case1_branches(const CaseOneInit& init, double t, const PhysicalParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  const int cutoff = params.fock_cutoff();
  const auto q = coherent_amplitudes(init.alpha, cutoff);
  const RabiTable tr(cutoff, params.xi() * t);
  auto q_at = [&](int m) { return m <= cutoff ? q[m] : cplx{}; };

  Case1Branches br;
  br.up.resize(cutoff + 1);
  br.mid.resize(cutoff + 1);
  br.down.resize(cutoff + 1);
  for (int l = 0; l <= cutoff; ++l) {
    br.up[l] = l + 2 <= cutoff ? down_to_up(l + 2, tr) * q_at(l + 2) : cplx{};
    br.mid[l] = l + 1 <= cutoff ? down_to_mid(l + 1, tr) * q_at(l + 1) : cplx{};
    br.down[l] = down_to_down(l, tr) * q[l];
  }
  return br;
}

double coherent_deficit(const CaseOneInit& init, int cutoff) {
  CompensatedSum s;
  for (const cplx& v : coherent_amplitudes(init.alpha, cutoff)) s.add(std::norm(v));
  return 1.0 - s.value();
}

}  // namespace

InternalOccupations occupations_case1(const PhononDistribution& dist, double t,
                                      const PhysicalParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  const int cutoff = dist.cutoff();
  const RabiTable tr(std::max(cutoff, 1), params.xi() * t);
  CompensatedSum up, mid, down;
  for (int n = 0; n <= cutoff; ++n) {
    const double p = dist.weights[n];
    const double u = down_to_up(n, tr);
    const double m = down_to_mid(n, tr);
    const double d = down_to_down(n, tr);
    up.add(u * u * p);
    mid.add(m * m * p);
    down.add(d * d * p);
  }
  return {up.value(), mid.value(), down.value(), dist.truncation_deficit()};
}

InternalOccupations occupations_case1(const CaseOneInit& init, double t,
                                      const PhysicalParams& params) {
  PhononDistribution dist;
  dist.kind = DistributionKind::poisson;
  dist.mean = init.mean_phonons();
  for (const cplx& v : coherent_amplitudes(init.alpha, params.fock_cutoff())) {
    dist.weights.push_back(std::norm(v));
  }
  return occupations_case1(dist, t, params);
}

InternalOccupations occupations_case2(const CaseTwoInit& init, double t,
                                      const PhysicalParams& params) {
  const double xi_t = params.xi() * t;
  const double c1 = std::cos(xi_t);
  const double s1 = std::sin(xi_t);
  const double c3 = std::cos(std::sqrt(3.0) * xi_t);
  const double s3 = std::sin(std::sqrt(3.0) * xi_t);
  const double a2 = init.a * init.a;
  const double b2 = init.b * init.b;
  const double c2 = init.c * init.c;

  InternalOccupations out;
  out.p_up = a2 / 9.0 * (2.0 + c3) * (2.0 + c3);
  out.p_mid = a2 / 3.0 * s3 * s3 + b2 * c1 * c1;
  out.p_down = 2.0 / 9.0 * a2 * (1.0 - c3) * (1.0 - c3) + b2 * s1 * s1 + c2;
  return out;
}

MotionalDensityMatrix motional_case1(const CaseOneInit& init, double t,
                                     const PhysicalParams& params) {
  const auto br = case1_branches(init, t, params);
  const int dim = params.fock_cutoff() + 1;
  Eigen::MatrixXcd rho(dim, dim);
  for (int l = 0; l < dim; ++l) {
    for (int m = l; m < dim; ++m) {
      rho(l, m) = br.up[l] * std::conj(br.up[m]) + br.mid[l] * std::conj(br.mid[m]) +
                  br.down[l] * std::conj(br.down[m]);
    }
  }
  return MotionalDensityMatrix(std::move(rho), coherent_deficit(init, params.fock_cutoff()));
}

MotionalDensityMatrix motional_distribution(const PhononDistribution& dist, double t,
                                            const PhysicalParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  const int cutoff = dist.cutoff();
  const RabiTable tr(std::max(cutoff, 1), params.xi() * t);
  auto p = [&](int n) { return n <= cutoff ? dist.weights[n] : 0.0; };
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int l = 0; l <= cutoff; ++l) {
    const double u = l + 2 <= cutoff ? down_to_up(l + 2, tr) : 0.0;
    const double m = l + 1 <= cutoff ? down_to_mid(l + 1, tr) : 0.0;
    const double d = down_to_down(l, tr);
    rho(l, l) = u * u * p(l + 2) + m * m * p(l + 1) + d * d * p(l);
  }
  return MotionalDensityMatrix(std::move(rho), dist.truncation_deficit());
}

MotionalDensityMatrix motional_case2(const CaseTwoInit& init, double t,
                                     const PhysicalParams& params) {
  const double xi_t = params.xi() * t;
  const double c1 = std::cos(xi_t);
  const double s1 = std::sin(xi_t);
  const double c3 = std::cos(std::sqrt(3.0) * xi_t);
  const double s3 = std::sin(std::sqrt(3.0) * xi_t);
  const double a = init.a, b = init.b, c = init.c;
  const cplx e1 = std::polar(1.0, init.phi1);
  const cplx e2 = std::polar(1.0, init.phi2);
  const cplx e21 = std::polar(1.0, init.phi2 - init.phi1);

  const int dim = params.fock_cutoff() + 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(0, 0) = a * a / 9.0 * (2.0 + c3) * (2.0 + c3) + b * b * c1 * c1 + c * c;
  rho(1, 1) = a * a / 3.0 * s3 * s3 + b * b * s1 * s1;
  rho(2, 2) = 2.0 / 9.0 * a * a * (1.0 - c3) * (1.0 - c3);
  // rho01 and rho12 are odd in t; their overall sign follows the propagator.
  rho(0, 1) = -(a * b / std::sqrt(3.0) * s3 * c1 * e1 + b * c * s1 * e21);
  rho(0, 2) = std::sqrt(2.0) / 3.0 * a * c * (1.0 - c3) * e2;
  rho(1, 2) = -(std::sqrt(2.0) / 3.0 * a * b * (1.0 - c3) * s1 * e1);
  return MotionalDensityMatrix(std::move(rho), 0.0);
}

MotionalMoments case1_moments(const CaseOneInit& init, double t, const PhysicalParams& params) {
  const auto br = case1_branches(init, t, params);
  const int dim = params.fock_cutoff() + 1;
  auto entry = [&](int l, int m) {
    return br.up[l] * std::conj(br.up[m]) + br.mid[l] * std::conj(br.mid[m]) +
           br.down[l] * std::conj(br.down[m]);
  };
  CompensatedSum n_mean;
  CompensatedComplexSum first;
  CompensatedComplexSum second;
  for (int n = 0; n < dim; ++n) {
    n_mean.add(n * (std::norm(br.up[n]) + std::norm(br.mid[n]) + std::norm(br.down[n])));
    if (n + 1 < dim) first.add(std::sqrt(n + 1.0) * entry(n, n + 1));
    if (n + 2 < dim) second.add(std::sqrt((n + 1.0) * (n + 2.0)) * entry(n, n + 2));
  }
  return {n_mean.value(), first.value(), second.value()};
}

MotionalMoments case2_moments(const CaseTwoInit& init, double t, const PhysicalParams& params) {
  const auto rho = motional_case2(init, t, params.with_cutoff(2));
  MotionalMoments m;
  m.n_mean = rho(1, 1).real() + 2.0 * rho(2, 2).real();
  m.first = rho(0, 1) + std::sqrt(2.0) * rho(1, 2);
  m.second = std::sqrt(2.0) * rho(0, 2);
  return m;
}

MotionalDensityMatrix limit_coherent_form(double n_mean, double phase, int cutoff) {
  if (!(n_mean >= 0.0 && n_mean < 1.0)) {
    throw std::invalid_argument("weak-field coherent form needs 0 <= n_mean < 1, got " +
                                std::to_string(n_mean));
  }
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  rho(0, 0) = 1.0 - n_mean;
  rho(1, 1) = n_mean;
  rho(0, 1) = std::polar(std::sqrt(n_mean), phase);
  return MotionalDensityMatrix(std::move(rho), 0.0);
}

MotionalDensityMatrix limit_squeezed_form(double n_mean, double phase, int cutoff) {
  if (!(n_mean >= 0.0 && n_mean <= 2.0)) {
    throw std::invalid_argument("weak-field squeezed form needs 0 <= n_mean <= 2, got " +
                                std::to_string(n_mean));
  }
  if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  rho(0, 0) = 1.0 - 0.5 * n_mean;
  rho(2, 2) = 0.5 * n_mean;
  rho(0, 2) = std::polar(std::sqrt(0.5 * n_mean), phase);
  return MotionalDensityMatrix(std::move(rho), 0.0);
}

EvolutionPoint evolution_point(const InitialCondition& init, double t, const PhysicalParams& params) {
  EvolutionPoint out;
  out.t = t;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CaseOneInit>) {
          out.occupations = occupations_case1(s, t, params);
          out.motional = motional_case1(s, t, params);
        } else if constexpr (std::is_same_v<T, CaseTwoInit>) {
          out.occupations = occupations_case2(s, t, params);
          out.motional = motional_case2(s, t, params);
        } else {
          const auto dist = phonon_distribution(s.kind, s.mean, params.fock_cutoff());
          out.occupations = occupations_case1(dist, t, params);
          out.motional = motional_distribution(dist, t, params);
        }
      },
      init);
  return out;
}

}  // namespace ionjcm
