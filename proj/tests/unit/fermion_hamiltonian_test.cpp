// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "atomq/fermion_hamiltonian.hpp"
#include "support/oracles.hpp"

namespace atomq {
namespace {

using testing::basis_a;
using testing::basis_a_reference;

std::string basis_a_file() {
  std::ostringstream out;
  const auto b = basis_a();
  const auto h = testing::random_symmetric_hamiltonian(b, 7);
  write_integrals(out, b, h, OccupationDeterminant::from_indices(basis_a_reference(), b));
  return out.str();
}

TEST(LoadIntegrals, SingleOrbital) {
  std::istringstream in("NORB 1\nNELEC 1\nREF 0\nORB 0 1 0 1 1\nH1 0 0 -0.5 0\n");
  const auto sys = parse_integrals(in);
  EXPECT_EQ(sys.basis.size(), 1u);
  EXPECT_EQ(sys.hamiltonian.h1.size(), 1u);
  EXPECT_DOUBLE_EQ(sys.hamiltonian.h1.at({0, 0}).real(), -0.5);
  EXPECT_TRUE(sys.hamiltonian.h2.empty());
}

TEST(LoadIntegrals, BasisAReferenceLabels) {
  std::istringstream in(basis_a_file());
  const auto sys = parse_integrals(in);
  EXPECT_EQ(sys.reference.n_electrons(), 5);
  EXPECT_EQ(sys.reference.total_two_m(), 1);
  EXPECT_EQ(sys.reference.total_parity(), 1);
}

TEST(LoadIntegrals, RejectsNonHermitian) {
  std::istringstream in("NORB 2\nREF 0\nORB 0 1 0 1 1\nORB 1 1 0 1 1\nH1 0 1 1 0\nH1 1 0 0.5 0\n");
  EXPECT_THROW(parse_integrals(in), ValidationError);
}

TEST(LoadIntegrals, ParseErrorCarriesLineNumber) {
  std::istringstream in("NORB 2\n# comment\nH1 0 5 1 0\n");
  try {
    parse_integrals(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadIntegrals, MalformedLine) {
  std::istringstream in("NORB 1\nH1 0 0 abc 0\n");
  EXPECT_THROW(parse_integrals(in), ParseError);
}

TEST(LoadIntegrals, RoundTripReproducesMaps) {
  const std::string text = basis_a_file();
  std::istringstream in(text);
  const auto sys = parse_integrals(in);
  std::ostringstream out;
  write_integrals(out, sys.basis, sys.hamiltonian, sys.reference);
  std::istringstream in2(out.str());
  const auto again = parse_integrals(in2);
  EXPECT_EQ(again.hamiltonian, sys.hamiltonian);
  EXPECT_EQ(again.reference.occupations(), sys.reference.occupations());
  EXPECT_EQ(out.str(), text);
}

TEST(Reorder, EvenOddSwaps) {
  const auto b = testing::make_basis({{7, 0, 1, 1}, {7, 1, 1, 1}});
  FermionHamiltonian h;
  h.n_orbs = 2;
  h.h1[{0, 0}] = 1.0;
  const auto r = reorder_odd_before_even(b, h, OccupationDeterminant::from_indices({0}, b));
  EXPECT_EQ(r.permutation, (std::vector<int>{1, 0}));
  EXPECT_EQ(r.basis[0].parity, OrbitalParity::odd);
  EXPECT_EQ(r.hamiltonian.h1.at({1, 1}).real(), 1.0);
  EXPECT_TRUE(r.reference.occupied(1));
  EXPECT_EQ(r.parity_qubit, 0);
}

TEST(Reorder, AlreadyOrderedIsIdentity) {
  const auto b = testing::make_basis({{7, 1, 1, 1}, {7, 0, 1, 1}});
  FermionHamiltonian h;
  h.n_orbs = 2;
  const auto r = reorder_odd_before_even(b, h, OccupationDeterminant::from_indices({1}, b));
  EXPECT_EQ(r.permutation, (std::vector<int>{0, 1}));
}

TEST(Reorder, BasisAOddOrbitalsFirst) {
  const auto b = basis_a();
  const auto h = testing::random_symmetric_hamiltonian(b, 3);
  const auto r = reorder_odd_before_even(b, h, OccupationDeterminant::from_indices(basis_a_reference(), b));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(r.basis[i].parity, OrbitalParity::odd) << i;
  EXPECT_TRUE(r.basis.is_odd_before_even());
  EXPECT_EQ(r.parity_qubit, 5);
  EXPECT_EQ(r.reference.total_two_m(), 1);
  EXPECT_EQ(r.reference.n_electrons(), 5);
}

TEST(Reorder, SpectrumIsInvariant) {
  const auto b = testing::make_basis({{6, 0, 1, 1}, {6, 1, 1, -1}, {6, 0, 1, -1}, {6, 1, 1, 1}, {6, 1, 3, 1}});
  const auto h = testing::random_symmetric_hamiltonian(b, 11);
  const auto r = reorder_odd_before_even(b, h, OccupationDeterminant::from_indices({0}, b));
  const auto e0 = testing::hermitian_eigenvalues(testing::fock_matrix(h));
  const auto e1 = testing::hermitian_eigenvalues(testing::fock_matrix(r.hamiltonian));
  EXPECT_LT((e0 - e1).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FockMatrix, IsHermitian) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto b = testing::make_basis({{6, 0, 1, 1}, {6, 1, 1, -1}, {6, 0, 1, -1}, {6, 1, 1, 1}, {6, 1, 3, 1}, {6, 1, 3, -1}});
    const auto m = testing::fock_matrix(testing::random_symmetric_hamiltonian(b, seed));
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(OccupationDeterminant, DerivedLabels) {
  const auto d = OccupationDeterminant::from_indices(basis_a_reference(), basis_a());
  EXPECT_EQ(d.occupied_indices(), basis_a_reference());
  EXPECT_THROW(OccupationDeterminant::from_indices({0, 0}, basis_a()), ValidationError);
  EXPECT_THROW(OccupationDeterminant::from_indices({9}, basis_a()), ValidationError);
}

}  // namespace
}  // namespace atomq
