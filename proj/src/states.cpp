#include "ionjcm/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ionjcm {

namespace {

constexpr int kMaxCutoff = 20000;

void check_mean(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("mean phonon number must be finite and non-negative");
  }
}

// Calls visit(n, p(n)) for n = 0, 1, ... while it returns true.
template <typename Visit>
void for_each_weight(DistributionKind kind, double mean, Visit&& visit) {
  switch (kind) {
    case DistributionKind::poisson: {
      double p = std::exp(-mean);
      for (int n = 0; visit(n, p); ++n) p *= mean / (n + 1);
      return;
    }
    case DistributionKind::number: {
      const int target = static_cast<int>(std::lround(mean));
      for (int n = 0; visit(n, n == target ? 1.0 : 0.0); ++n) {
      }
      return;
    }
    case DistributionKind::thermal: {
      const double ratio = mean / (1.0 + mean);
      double p = 1.0 / (1.0 + mean);
      for (int n = 0; visit(n, p); ++n) p *= ratio;
      return;
    }
    case DistributionKind::squeezed_vacuum: {
      const double tanh2 = mean / (1.0 + mean);
      double even = 1.0 / std::sqrt(1.0 + mean);
      for (int n = 0;; ++n) {
        if (n % 2 == 1) {
          if (!visit(n, 0.0)) return;
          const double k = (n + 1) / 2;
          even *= (2.0 * k - 1.0) / (2.0 * k) * tanh2;
        } else if (!visit(n, even)) {
          return;
        }
      }
    }
  }
}

}  // namespace

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(phi, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::poisson: return "poisson";
    case DistributionKind::number: return "number";
    case DistributionKind::thermal: return "thermal";
    case DistributionKind::squeezed_vacuum: return "squeezed_vacuum";
  }
  return "unknown";
}

DistributionKind distribution_kind_from_string(std::string_view name) {
  if (name == "poisson") return DistributionKind::poisson;
  if (name == "number") return DistributionKind::number;
  if (name == "thermal") return DistributionKind::thermal;
  if (name == "squeezed_vacuum" || name == "squeezed") return DistributionKind::squeezed_vacuum;
  throw std::invalid_argument("unknown distribution kind '" + std::string(name) +
                              "' (expected poisson|number|thermal|squeezed_vacuum)");
}

double PhononDistribution::truncation_deficit() const {
  CompensatedSum s;
  for (double w : weights) s.add(w);
  return 1.0 - s.value();
}

PhononDistribution phonon_distribution(DistributionKind kind, double mean, int cutoff) {
  check_mean(mean);
  if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
  if (kind == DistributionKind::number) {
    if (mean != std::floor(mean)) {
      throw std::invalid_argument("number-state mean must be an integer, got " + std::to_string(mean));
    }
    if (mean > cutoff) {
      throw std::invalid_argument("number state " + std::to_string(static_cast<int>(mean)) +
                                  " exceeds the cutoff " + std::to_string(cutoff));
    }
  }
  PhononDistribution out;
  out.kind = kind;
  out.mean = mean;
  out.weights.reserve(cutoff + 1);
  for_each_weight(kind, mean, [&](int n, double p) {
    out.weights.push_back(p);
    return n < cutoff;
  });
  return out;
}

int required_cutoff(DistributionKind kind, double mean, double tail_tol) {
  check_mean(mean);
  if (kind == DistributionKind::number) {
    if (mean != std::floor(mean)) throw std::invalid_argument("number-state mean must be an integer");
    return std::max(2, static_cast<int>(mean));
  }
  int cutoff = 0;
  CompensatedSum mass;
  for_each_weight(kind, mean, [&](int n, double p) {
    mass.add(p);
    cutoff = n;
    return 1.0 - mass.value() > tail_tol && n < kMaxCutoff;
  });
  if (kind == DistributionKind::squeezed_vacuum && cutoff % 2 == 1) ++cutoff;
  if (kind == DistributionKind::poisson) cutoff = std::max(cutoff, default_cutoff(mean));
  return std::max(cutoff, 2);
}

std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
  std::vector<cplx> q(cutoff + 1);
  q[0] = std::exp(-0.5 * std::norm(alpha));
  for (int m = 1; m <= cutoff; ++m) q[m] = q[m - 1] * alpha / std::sqrt(static_cast<double>(m));
  return q;
}

CaseOneInit case_one_state(double mean_phonons, double phi) {
  check_mean(mean_phonons);
  return CaseOneInit{std::polar(std::sqrt(mean_phonons), wrap_phase(phi))};
}

CaseTwoInit case_two_state(double a, double b, double c, double phi1, double phi2) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0)) {
    throw std::invalid_argument("amplitudes a, b, c must be non-negative");
  }
  const double norm = a * a + b * b + c * c;
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("a^2 + b^2 + c^2 must equal 1, got " + std::to_string(norm));
  }
  return CaseTwoInit{a, b, c, wrap_phase(phi1), wrap_phase(phi2)};
}

}  // namespace ionjcm
