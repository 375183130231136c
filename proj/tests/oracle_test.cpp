#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ionjcm/closed_form.hpp"
#include "ionjcm/oracle.hpp"
#include "ionjcm/propagator.hpp"

using namespace ionjcm;
using namespace ionjcm::oracle;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXcd basis_state(const TruncatedHamiltonian& h, BasisLabel label) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(h.dimension());
  v(h.index(label)) = 1.0;
  return v;
}

}  // namespace

TEST(TruncatedHamiltonian, DimensionAndIndexing) {
  const TruncatedHamiltonian h(PhysicalParams::defaults(2));
  EXPECT_EQ(h.dimension(), 9);
  EXPECT_EQ(h.matrix().rows(), 9);
  for (int i = 0; i < h.dimension(); ++i) EXPECT_EQ(h.index(h.label(i)), i);
  EXPECT_THROW(h.index({0, 3}), std::out_of_range);
  EXPECT_THROW(h.label(9), std::out_of_range);
}

TEST(TruncatedHamiltonian, ElementMagnitude) {
  const auto params = PhysicalParams::defaults(4);
  const TruncatedHamiltonian h(params);
  const cplx e = h.matrix()(h.index({0, 1}), h.index({-1, 2}));
  EXPECT_NEAR(std::abs(e), 2.0 * params.eta() * params.omega_rabi(), 1e-9);
  EXPECT_EQ(h.scale(), params.eta() * params.omega_rabi());
}

TEST(TruncatedHamiltonian, HermitianAndBlockDiagonal) {
  const TruncatedHamiltonian h(PhysicalParams::defaults(15));
  const auto& m = h.matrix();
  EXPECT_LE((m - m.adjoint()).cwiseAbs().maxCoeff() / h.scale(), 1e-14);
  for (int r = 0; r < h.dimension(); ++r) {
    for (int c = 0; c < h.dimension(); ++c) {
      if (total_excitation(h.label(r)) != total_excitation(h.label(c))) ASSERT_EQ(m(r, c), cplx(0.0));
    }
  }
}

TEST(TruncatedHamiltonian, TwoExcitationSpectrum) {
  const TruncatedHamiltonian h(PhysicalParams::defaults(4));
  const auto members = subspace_members(2);
  Eigen::Matrix3cd block;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) block(r, c) = h.matrix()(h.index(members[r]), h.index(members[c])) / h.scale();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(block);
  EXPECT_NEAR(solver.eigenvalues()(0), -std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(solver.eigenvalues()(1), 0.0, 1e-12);
  EXPECT_NEAR(solver.eigenvalues()(2), std::sqrt(6.0), 1e-12);
}

TEST(Evolve, IdentityAtTimeZero) {
  const auto params = PhysicalParams::defaults(6);
  const Eigen::MatrixXcd rho0 = projector(coherent_ground_state(std::polar(1.0, 0.5), 6));
  EXPECT_LE((evolve(rho0, 0.0, params) - rho0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Evolve, SingleQuantumHalfRabi) {
  const auto params = PhysicalParams::defaults(3);
  const TruncatedHamiltonian h(params);
  const Evolver ev(h);
  const auto psi = ev.evolve(basis_state(h, {-1, 1}), 0.5 * pi / params.xi());
  EXPECT_NEAR(std::abs(psi(h.index({0, 0}))), 1.0, 1e-10);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(Evolve, DimensionMismatchThrows) {
  const Evolver ev(build_hamiltonian(PhysicalParams::defaults(3)));
  EXPECT_THROW(ev.evolve(Eigen::VectorXcd(Eigen::VectorXcd::Zero(5)), 1e-6), std::invalid_argument);
  EXPECT_THROW(ev.evolve(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(5, 5)), 1e-6), std::invalid_argument);
}

TEST(Evolve, CoherentOccupationsAgreeWithClosedForm) {
  const int cutoff = default_cutoff(8.0);
  const auto params = PhysicalParams::defaults(cutoff);
  const Evolver ev(build_hamiltonian(params));
  const auto init = case_one_state(8.0, 0.0);
  const Eigen::VectorXcd psi0 = coherent_ground_state(init.alpha, cutoff);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 6e-4);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    const auto occ = partial_trace_motional(projector(ev.evolve(psi0, t))).occupations;
    const auto mine = occupations_case1(init, t, params);
    ASSERT_NEAR(occ.p_up, mine.p_up, 1e-9);
    ASSERT_NEAR(occ.p_mid, mine.p_mid, 1e-9);
    ASSERT_NEAR(occ.p_down, mine.p_down, 1e-9);
  }
}

TEST(Evolve, TracePurityAndExcitationConserved) {
  const int cutoff = 20;
  const auto params = PhysicalParams::defaults(cutoff);
  const Evolver ev(build_hamiltonian(params));
  const Eigen::MatrixXcd rho0 = projector(coherent_ground_state(std::polar(1.2, 0.3), cutoff));
  const double n0 = excitation_expectation(rho0);
  for (double t : {1e-6, 1e-4, 5e-4, 1e-3}) {
    const Eigen::MatrixXcd rho = ev.evolve(rho0, t);
    EXPECT_NEAR(rho.trace().real(), rho0.trace().real(), 1e-11);
    EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-11);
    EXPECT_NEAR(excitation_expectation(rho), n0, 1e-10);
  }
}

TEST(Evolve, StaysInsideItsBlock) {
  const auto params = PhysicalParams::defaults(10);
  const TruncatedHamiltonian h(params);
  const Evolver ev(h);
  const auto psi = ev.evolve(basis_state(h, {1, 3}), 2.3e-4);
  for (int i = 0; i < h.dimension(); ++i) {
    if (total_excitation(h.label(i)) != 5) ASSERT_LE(std::abs(psi(i)), 1e-12);
  }
}

TEST(Evolve, PropagatorBlocksAgree) {
  const int cutoff = 12;
  const auto params = PhysicalParams::defaults(cutoff);
  const TruncatedHamiltonian h(params);
  const Evolver ev(h);
  for (double t : {3e-7, 4.2e-5, 6e-4}) {
    const Eigen::MatrixXcd u = ev.unitary(t);
    for (int n = 0; n <= cutoff; ++n) {
      const auto block = subspace_propagator(n, t, params);
      const auto members = subspace_members(n);
      for (std::size_t r = 0; r < members.size(); ++r) {
        for (std::size_t c = 0; c < members.size(); ++c) {
          ASSERT_LE(std::abs(u(h.index(members[r]), h.index(members[c])) - block.matrix(r, c)), 1e-9)
              << "n=" << n;
        }
      }
    }
  }
}

TEST(PartialTrace, ProductStateFactors) {
  const int cutoff = 3;
  Eigen::Matrix3cd internal;
  internal << 0.5, cplx(0.1, 0.2), 0.0, cplx(0.1, -0.2), 0.3, 0.05, 0.0, 0.05, 0.2;
  Eigen::MatrixXcd motional = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  motional(0, 0) = 0.6;
  motional(1, 1) = 0.4;
  motional(0, 1) = cplx(0.2, 0.1);
  motional(1, 0) = cplx(0.2, -0.1);
  Eigen::MatrixXcd full(3 * (cutoff + 1), 3 * (cutoff + 1));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) full.block(r * (cutoff + 1), c * (cutoff + 1), cutoff + 1, cutoff + 1) = internal(r, c) * motional;
  }
  EXPECT_LE((partial_trace_internal(full).entries() - motional).cwiseAbs().maxCoeff(), 1e-15);
  const auto red = partial_trace_motional(full);
  EXPECT_LE((red.matrix - internal).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(red.occupations.p_down, 0.5, 1e-15);
  EXPECT_NEAR(red.occupations.p_mid, 0.3, 1e-15);
  EXPECT_NEAR(red.occupations.p_up, 0.2, 1e-15);
}

TEST(PartialTrace, MaximallyMixed) {
  const int cutoff = 4;
  const int dim = 3 * (cutoff + 1);
  const Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim) / dim;
  const auto motional = partial_trace_internal(full);
  EXPECT_LE((motional.entries() - Eigen::MatrixXcd::Identity(cutoff + 1, cutoff + 1) / (cutoff + 1.0))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  const auto internal = partial_trace_motional(full);
  EXPECT_LE((internal.matrix - Eigen::Matrix3cd::Identity() / 3.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(partial_trace_internal(Eigen::MatrixXcd::Zero(7, 7)), std::invalid_argument);
}

TEST(PartialTrace, EvolvedCaseTwoMatchesClosedForm) {
  const auto params = PhysicalParams::defaults(2);
  const auto s = case_two_state(0.28, 0.0, 0.96, 0.0, 0.0);
  const double t = 3.3e-5;
  const Eigen::MatrixXcd rho =
      evolve(projector(superposition_vacuum_state(s.a, s.b, s.c, s.phi1, s.phi2, 2)), t, params);
  EXPECT_LE((partial_trace_internal(rho).entries() - motional_case2(s, t, params).entries()).cwiseAbs().maxCoeff(),
            1e-9);
}

TEST(CoherentGroundState, IndependentAmplitudes) {
  const cplx alpha = std::polar(std::sqrt(8.0), -0.8);
  const auto psi = coherent_ground_state(alpha, 43);
  const auto q = coherent_amplitudes(alpha, 43);
  for (int m = 0; m <= 43; ++m) ASSERT_NEAR(std::abs(psi(m) - q[m]), 0.0, 1e-13);
  EXPECT_EQ(psi.tail(2 * 44).cwiseAbs().maxCoeff(), 0.0);
}
