// Initial conditions and phonon-number distributions.

#ifndef IONJCM_STATES_HPP
#define IONJCM_STATES_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ionjcm/model.hpp"

namespace ionjcm {

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

enum class DistributionKind { poisson, number, thermal, squeezed_vacuum };

std::string_view to_string(DistributionKind kind);
/// Throws std::invalid_argument for an unknown name.
DistributionKind distribution_kind_from_string(std::string_view name);

struct PhononDistribution {
  DistributionKind kind = DistributionKind::poisson;
  double mean = 0.0;
  /// p(n) for 0 <= n <= cutoff.
  std::vector<double> weights;

  int cutoff() const { return static_cast<int>(weights.size()) - 1; }
  /// 1 - sum of the retained weights.
  double truncation_deficit() const;
};

/// Poisson:   p(n) = e^-mu mu^n / n!
/// number:    p(mean) = 1; mean must be an integer <= cutoff
/// thermal:   p(n) = mu^n / (1 + mu)^(n+1)
/// squeezed:  p(2k) = (2k)! / (2^k k!)^2 tanh^2k(r) / cosh(r), sinh^2(r) = mu
/// All weights come from multiplicative recurrences.
PhononDistribution phonon_distribution(DistributionKind kind, double mean, int cutoff);

/// Smallest cutoff whose discarded tail is at most `tail_tol`; never below
/// default_cutoff(mean) for Poisson weights and never below 2.
int required_cutoff(DistributionKind kind, double mean, double tail_tol = kTailTolerance);

/// q(m) = exp(-|alpha|^2/2) alpha^m / sqrt(m!), m = 0..cutoff.
std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff);

/// Ground internal state times a coherent phonon state.
struct CaseOneInit {
  cplx alpha;

  double mean_phonons() const { return std::norm(alpha); }
  double phase() const { return std::arg(alpha); }
  bool operator==(const CaseOneInit&) const = default;
};

CaseOneInit case_one_state(double mean_phonons, double phi);

/// (a|+1> + b e^{i phi1}|0> + c e^{i phi2}|-1>) times the phonon vacuum.
struct CaseTwoInit {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  bool operator==(const CaseTwoInit&) const = default;
};

/// Rejects negative amplitudes and |a^2 + b^2 + c^2 - 1| > 1e-9; phases are
/// wrapped into (-pi, pi].
CaseTwoInit case_two_state(double a, double b, double c, double phi1, double phi2);

/// Ground internal state times a diagonal phonon distribution.
struct DistributionInit {
  DistributionKind kind = DistributionKind::poisson;
  double mean = 0.0;

  bool operator==(const DistributionInit&) const = default;
};

using InitialCondition = std::variant<CaseOneInit, CaseTwoInit, DistributionInit>;

}  // namespace ionjcm

#endif  // IONJCM_STATES_HPP
