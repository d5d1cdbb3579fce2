// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "atomq/problem.hpp"
#include "atomq/vqe.hpp"
#include "support/oracles.hpp"

namespace atomq {
namespace {

/// Two s1/2 shells: four even orbitals, so no tapering and three SD parameters.
OrbitalBasis two_shell_basis() { return testing::make_basis({{7, 0, 1, -1}, {7, 0, 1, 1}, {8, 0, 1, -1}, {8, 0, 1, 1}}); }

/// s1/2 and p1/2: tapered down to two qubits with one double excitation.
OrbitalBasis sp_basis() { return testing::make_basis({{7, 0, 1, -1}, {7, 0, 1, 1}, {7, 1, 1, -1}, {7, 1, 1, 1}}); }

struct Toy {
  QubitProblem problem;
  double e_fci = 0.0;
};

Toy two_electron_toy(const OrbitalBasis& basis, std::uint64_t seed) {
  const auto h = testing::random_symmetric_hamiltonian(basis, seed, 0.5);
  const auto ref = OccupationDeterminant::from_indices({0, 1}, basis);
  Toy t{build_problem(basis, h, ref), 0.0};
  t.e_fci = testing::sector_fci(h, testing::sector_determinants(basis, 2, ref.total_two_m(), ref.total_parity()));
  return t;
}

TEST(Vqe, SingleQubitZReachesGroundState) {
  const QubitHamiltonian z(1, {{{1.0, 0.0}, PauliString::parse("Z")}});
  const HeAnsatz he{1, 1, HeLayout::merged, HeRotation::zyz};
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const auto r = run_vqe(z, he.program(), random_initial_parameters(he.n_params(), seed), {}, seed);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.energy, -1.0, 1e-8) << "seed " << seed;
  }
}

TEST(Vqe, TwoElectronDuccAdamReachesFci) {
  for (const auto& basis : {two_shell_basis(), sp_basis()})
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto toy = two_electron_toy(basis, seed);
      const DuccAnsatz ansatz(toy.problem);
      VqeOptions opt;
      opt.max_iters = 300;
      opt.lower_bound = toy.e_fci;
      const auto r = run_vqe(toy.problem.hamiltonian, ansatz.program(CompileStrategy::three_step),
                             std::vector<double>(ansatz.n_params(), 0.0), opt);
      EXPECT_LT(std::abs(r.energy - toy.e_fci), 1e-6) << "seed " << seed << " iterations " << r.iterations;
      EXPECT_GE(r.energy, toy.e_fci - 1e-9);
    }
}

TEST(Vqe, InitialDuccEnergyIsReferenceEnergy) {
  const auto toy = two_electron_toy(two_shell_basis(), 9);
  const DuccAnsatz ansatz(toy.problem);
  VqeOptions opt;
  opt.max_iters = 1;
  const auto r = run_vqe(toy.problem.hamiltonian, ansatz.program(CompileStrategy::greedy),
                         std::vector<double>(ansatz.n_params(), 0.0), opt);
  ASSERT_EQ(r.trajectory.size(), 1u);
  const auto f = testing::fock_matrix(toy.problem.system.hamiltonian);
  EXPECT_NEAR(r.trajectory[0].energy, f(3, 3).real(), 1e-12);  // orbitals {0, 1} occupied
  EXPECT_NEAR(r.energy, toy.problem.reference_energy, 1e-12);
}

TEST(Vqe, TrajectoryInvariants) {
  const auto toy = two_electron_toy(two_shell_basis(), 2);
  const DuccAnsatz ansatz(toy.problem);
  for (auto kind : {OptimizerKind::adam, OptimizerKind::qng}) {
    VqeOptions opt;
    opt.optimizer = kind;
    opt.max_iters = 40;
    const auto r = run_vqe(toy.problem.hamiltonian, ansatz.program(CompileStrategy::greedy),
                           std::vector<double>(ansatz.n_params(), 0.0), opt);
    EXPECT_LE(r.trajectory.size(), opt.max_iters);
    EXPECT_EQ(r.iterations, r.trajectory.size());
    EXPECT_EQ(r.energy, r.trajectory.back().energy);
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) EXPECT_EQ(r.trajectory[i].iteration, i);
    EXPECT_LT(r.energy, r.trajectory.front().energy);
  }
}

TEST(Vqe, StopsAfterPatienceOfFlatIterations) {
  // constant Hamiltonian: every energy difference is zero
  const QubitHamiltonian c(2, {{{0.7, 0.0}, PauliString::identity(2)}});
  const HeAnsatz he{2, 1, HeLayout::merged, HeRotation::zx};
  VqeOptions opt;
  const auto r = run_vqe(c, he.program(), std::vector<double>(he.n_params(), 0.1), opt);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, opt.patience + 1);
}

TEST(Vqe, VariationalBoundViolationThrows) {
  const auto toy = two_electron_toy(two_shell_basis(), 1);
  const DuccAnsatz ansatz(toy.problem);
  VqeOptions opt;
  opt.lower_bound = toy.problem.reference_energy + 1.0;  // deliberately wrong "FCI"
  EXPECT_THROW(run_vqe(toy.problem.hamiltonian, ansatz.program(CompileStrategy::greedy),
                       std::vector<double>(ansatz.n_params(), 0.0), opt),
               NumericalError);
}

TEST(Vqe, QngAlsoConverges) {
  const auto toy = two_electron_toy(sp_basis(), 5);
  const DuccAnsatz ansatz(toy.problem);
  VqeOptions opt;
  opt.optimizer = OptimizerKind::qng;
  opt.lower_bound = toy.e_fci;
  const auto r = run_vqe(toy.problem.hamiltonian, ansatz.program(CompileStrategy::three_step),
                         std::vector<double>(ansatz.n_params(), 0.0), opt);
  EXPECT_LT(std::abs(r.energy - toy.e_fci), 1e-6);
}

TEST(Vqe, BasisAToyAdamApproachesFci) {
  const auto basis = testing::basis_a();
  const auto h = testing::random_symmetric_hamiltonian(basis, 21, 0.6, 0.15);
  const auto ref = OccupationDeterminant::from_indices(testing::basis_a_reference(), basis);
  const auto p = build_problem(basis, h, ref);
  const double e_fci = testing::sector_fci(h, testing::sector_determinants(basis, 5, 1, 1));
  const DuccAnsatz ansatz(p);
  VqeOptions opt;
  opt.lower_bound = e_fci;
  const auto r = run_vqe(p.hamiltonian, ansatz.program(CompileStrategy::three_step),
                         std::vector<double>(ansatz.n_params(), 0.0), opt);
  EXPECT_LT(r.energy - e_fci, 1e-5) << "iterations " << r.iterations;
  EXPECT_LT(r.energy, p.reference_energy);
}

TEST(Campaign, RunCountAndDeterminism) {
  EXPECT_EQ(campaign_size(4), 2u);
  EXPECT_EQ(campaign_size(198), 99u);
  const auto toy = two_electron_toy(two_shell_basis(), 4);
  const HeAnsatz he{4, 1, HeLayout::merged, HeRotation::zx};  // 16 parameters -> 8 runs
  VqeOptions opt;
  opt.max_iters = 60;
  opt.lower_bound = testing::hermitian_eigenvalues(testing::fock_matrix(toy.problem.system.hamiltonian))(0);
  const auto a = run_he_campaign(toy.problem.hamiltonian, he, opt, 77, 1);
  const auto b = run_he_campaign(toy.problem.hamiltonian, he, opt, 77, 4);
  ASSERT_EQ(a.runs.size(), 8u);
  ASSERT_EQ(b.runs.size(), 8u);
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    EXPECT_EQ(a.runs[i].run_id, i);
    EXPECT_EQ(a.runs[i].seed, b.runs[i].seed);
    EXPECT_EQ(a.runs[i].theta, b.runs[i].theta);
    EXPECT_EQ(a.runs[i].energy, b.runs[i].energy);
    seeds.insert(a.runs[i].seed);
  }
  EXPECT_EQ(seeds.size(), 8u);
  EXPECT_EQ(a.best, b.best);
}

TEST(Campaign, SixQubitRunsImproveOnTheirStart) {
  const auto basis = testing::basis_a();
  const auto p = build_problem(basis, testing::random_symmetric_hamiltonian(basis, 2, 0.4),
                               OccupationDeterminant::from_indices(testing::basis_a_reference(), basis));
  for (std::size_t layers : {3u, 4u, 5u, 6u}) {
    const HeAnsatz he{6, layers, HeLayout::splitted, HeRotation::zyz};
    VqeOptions opt;
    opt.max_iters = 30;
    const auto c = run_he_campaign(p.hamiltonian, he, opt, 5, 8);
    EXPECT_EQ(c.runs.size(), he.n_params() / 2);
    for (const auto& r : c.runs) {
      ASSERT_TRUE(r.ok()) << r.error;
      EXPECT_LT(r.energy, r.trajectory.front().energy);
    }
    EXPECT_LE(c.best_run().energy, c.runs.front().energy);
  }
}

TEST(Campaign, FailedRunIsRecordedNotFatal) {
  const QubitHamiltonian z(1, {{{1.0, 0.0}, PauliString::parse("Z")}});
  const HeAnsatz he{1, 1, HeLayout::merged, HeRotation::zyz};  // 6 parameters -> 3 runs
  VqeOptions opt;
  opt.max_iters = 20;
  opt.lower_bound = 0.5;  // unattainable bound trips the assertion in every run that goes below it
  const auto c = run_he_campaign(z, he, opt, 1, 2);
  ASSERT_EQ(c.runs.size(), 3u);
  std::size_t failed = 0;
  for (const auto& r : c.runs)
    if (!r.ok()) {
      ++failed;
      EXPECT_NE(r.error.find("variational bound"), std::string::npos);
    }
  EXPECT_GT(failed, 0u);
}

}  // namespace
}  // namespace atomq
