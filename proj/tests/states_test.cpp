#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "ionjcm/states.hpp"

using namespace ionjcm;

namespace {

double total(const PhononDistribution& d) { return std::accumulate(d.weights.begin(), d.weights.end(), 0.0); }

double first_moment(const PhononDistribution& d) {
  double m = 0.0;
  for (int n = 0; n <= d.cutoff(); ++n) m += n * d.weights[n];
  return m;
}

}  // namespace

TEST(WrapPhase, Range) {
  constexpr double pi = std::numbers::pi;
  EXPECT_EQ(wrap_phase(0.0), 0.0);
  EXPECT_EQ(wrap_phase(pi), pi);
  EXPECT_NEAR(wrap_phase(-pi), pi, 1e-15);
  EXPECT_NEAR(wrap_phase(3.0 * pi / 2.0), -pi / 2.0, 1e-15);
  EXPECT_NEAR(wrap_phase(7.0 * pi), pi, 1e-14);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = wrap_phase(u(rng));
    ASSERT_GT(w, -pi);
    ASSERT_LE(w, pi);
    ASSERT_EQ(wrap_phase(w), w);
  }
}

TEST(DistributionKind, Names) {
  for (auto k : {DistributionKind::poisson, DistributionKind::number, DistributionKind::thermal,
                 DistributionKind::squeezed_vacuum}) {
    EXPECT_EQ(distribution_kind_from_string(to_string(k)), k);
  }
  EXPECT_EQ(distribution_kind_from_string("squeezed"), DistributionKind::squeezed_vacuum);
  EXPECT_THROW(distribution_kind_from_string("binomial"), std::invalid_argument);
}

TEST(CoherentAmplitudes, Vacuum) {
  const auto q = coherent_amplitudes(0.0, 10);
  EXPECT_EQ(q[0], cplx(1.0));
  for (int m = 1; m <= 10; ++m) EXPECT_EQ(q[m], cplx(0.0));
}

TEST(CoherentAmplitudes, ModeAtSevenAndEight) {
  const auto q = coherent_amplitudes(std::sqrt(8.0), default_cutoff(8.0));
  int arg_max = 0;
  for (int m = 0; m < static_cast<int>(q.size()); ++m) {
    if (std::norm(q[m]) > std::norm(q[arg_max])) arg_max = m;
  }
  EXPECT_TRUE(arg_max == 7 || arg_max == 8);
  EXPECT_NEAR(std::norm(q[7]), std::norm(q[8]), 1e-15);
}

TEST(CoherentAmplitudes, TailBelowBudgetAndMatchesPoisson) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> mean(0.0, 16.0);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const double mu = mean(rng);
    const int cutoff = default_cutoff(mu);
    const auto q = coherent_amplitudes(std::polar(std::sqrt(mu), phase(rng)), cutoff);
    const auto p = phonon_distribution(DistributionKind::poisson, mu, cutoff);
    double sum = 0.0;
    for (int m = 0; m <= cutoff; ++m) {
      ASSERT_NEAR(std::norm(q[m]), p.weights[m], 1e-14);
      sum += std::norm(q[m]);
    }
    ASSERT_GE(sum, 1.0 - 1e-12) << "mean " << mu;
  }
}

TEST(PhononDistribution, Number) {
  const auto d = phonon_distribution(DistributionKind::number, 3.0, 10);
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(d.weights[n], n == 3 ? 1.0 : 0.0);
  EXPECT_THROW(phonon_distribution(DistributionKind::number, 2.5, 10), std::invalid_argument);
  EXPECT_THROW(phonon_distribution(DistributionKind::number, 11.0, 10), std::invalid_argument);
}

TEST(PhononDistribution, PoissonVacuumWeight) {
  const auto d = phonon_distribution(DistributionKind::poisson, 8.0, 43);
  EXPECT_NEAR(d.weights[0], 3.3546262790251185e-4, 1e-18);
  EXPECT_NEAR(first_moment(d), 8.0, 1e-9);
}

TEST(PhononDistribution, Thermal) {
  const int cutoff = required_cutoff(DistributionKind::thermal, 3.0);
  const auto d = phonon_distribution(DistributionKind::thermal, 3.0, cutoff);
  EXPECT_DOUBLE_EQ(d.weights[0], 0.25);
  EXPECT_DOUBLE_EQ(d.weights[1], 3.0 / 16.0);
  EXPECT_NEAR(total(d), 1.0, 1e-12);
  EXPECT_NEAR(first_moment(d), 3.0, 1e-9);
  EXPECT_LE(d.truncation_deficit(), kTailTolerance);
}

TEST(PhononDistribution, SqueezedVacuum) {
  const int cutoff = required_cutoff(DistributionKind::squeezed_vacuum, 3.0);
  const auto d = phonon_distribution(DistributionKind::squeezed_vacuum, 3.0, cutoff);
  for (int n = 1; n <= cutoff; n += 2) EXPECT_EQ(d.weights[n], 0.0);
  EXPECT_NEAR(d.weights[0], 0.5, 1e-15);  // 1 / cosh r with sinh^2 r = 3
  EXPECT_NEAR(first_moment(d), 3.0, 1e-9);
  EXPECT_LE(d.truncation_deficit(), kTailTolerance);
}

TEST(PhononDistribution, MomentsReproduceMean) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mean(0.0, 6.0);
  for (auto kind : {DistributionKind::poisson, DistributionKind::thermal,
                    DistributionKind::squeezed_vacuum, DistributionKind::number}) {
    for (int i = 0; i < 25; ++i) {
      double mu = mean(rng);
      if (kind == DistributionKind::number) mu = std::floor(mu);
      const int cutoff = required_cutoff(kind, mu);
      const auto d = phonon_distribution(kind, mu, cutoff);
      for (double w : d.weights) ASSERT_GE(w, 0.0);
      const double sum = total(d);
      ASSERT_LE(sum, 1.0 + 1e-13);
      ASSERT_GE(sum, 1.0 - kTailTolerance - 1e-13);
      ASSERT_NEAR(first_moment(d), mu, std::max(1e-9, kTailTolerance * cutoff)) << to_string(kind) << " " << mu;
    }
  }
}

TEST(PhononDistribution, LargeCutoffWithoutOverflow) {
  const auto d = phonon_distribution(DistributionKind::poisson, 150.0, 400);
  for (double w : d.weights) ASSERT_TRUE(std::isfinite(w));
  EXPECT_NEAR(total(d), 1.0, 1e-12);
}

TEST(RequiredCutoff, Policy) {
  EXPECT_EQ(required_cutoff(DistributionKind::number, 0.0), 2);
  EXPECT_EQ(required_cutoff(DistributionKind::number, 7.0), 7);
  EXPECT_GE(required_cutoff(DistributionKind::poisson, 8.0), default_cutoff(8.0));
  EXPECT_EQ(required_cutoff(DistributionKind::squeezed_vacuum, 3.0) % 2, 0);
}

TEST(CaseOneState, StoresAmplitude) {
  const auto s = case_one_state(0.51, 3.0 * std::numbers::pi);
  EXPECT_NEAR(s.mean_phonons(), 0.51, 1e-15);
  EXPECT_NEAR(s.phase(), std::numbers::pi, 1e-14);
}

TEST(CaseTwoState, Validation) {
  const double r = 1.0 / std::sqrt(3.0);
  EXPECT_NO_THROW(case_two_state(r, r, r, 0.0, 0.0));
  EXPECT_NO_THROW(case_two_state(1.0, 0.0, 0.0, 0.0, 0.0));
  EXPECT_THROW(case_two_state(0.6, 0.6, 0.6, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(case_two_state(-0.6, 0.8, 0.0, 0.0, 0.0), std::invalid_argument);
  const auto s = case_two_state(0.0, 0.6, 0.8, 4.0, -4.0);
  EXPECT_NEAR(s.phi1, 4.0 - 2.0 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(s.phi2, 2.0 * std::numbers::pi - 4.0, 1e-15);
}
