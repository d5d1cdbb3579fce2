// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "atomq/exact.hpp"
#include "atomq/parity_mapping.hpp"
#include "atomq/pauli.hpp"
#include "atomq/qubit_hamiltonian.hpp"
#include "support/oracles.hpp"

namespace atomq {
namespace {

using testing::Mat;

Mat dense(const std::vector<PauliTerm>& terms, std::size_t n) {
  return dense_matrix(QubitHamiltonian(PauliSum(n, terms)));
}

TEST(PauliString, ParseAndPrint) {
  const auto p = PauliString::parse("XYZI");
  EXPECT_EQ(p.at(3), 'X');
  EXPECT_EQ(p.at(2), 'Y');
  EXPECT_EQ(p.at(1), 'Z');
  EXPECT_EQ(p.at(0), 'I');
  EXPECT_EQ(p.to_string(), "XYZI");
  EXPECT_THROW(PauliString::parse("XQ"), Error);
}

TEST(PauliString, CommutationMatchesDenseCommutator) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const Mask lim = Mask{1} << n;
    std::vector<PauliString> all;
    for (Mask x = 0; x < lim; ++x)
      for (Mask z = 0; z < lim; ++z) all.emplace_back(n, x, z);
    std::vector<Mat> mats;
    for (const auto& p : all) mats.push_back(dense_matrix(p));
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = a; b < all.size(); ++b) {
        const bool dense_comm = (mats[a] * mats[b] - mats[b] * mats[a]).cwiseAbs().maxCoeff() < 1e-12;
        ASSERT_EQ(all[a].commutes_with(all[b]), dense_comm) << all[a].to_string() << " " << all[b].to_string();
      }
  }
}

TEST(PauliString, MultiplyMatchesDense) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const PauliString a(3, rng() & 7, rng() & 7), b(3, rng() & 7, rng() & 7);
    const auto [ph, c] = a.multiply(b);
    EXPECT_LT((dense_matrix(a) * dense_matrix(b) - ph * dense_matrix(c)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(ParityMapping, SingleOrbitalAnnihilator) {
  const auto m = dense(parity_annihilation(0, 1), 1);
  EXPECT_NEAR(std::abs(m(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 0)) + std::abs(m(1, 0)) + std::abs(m(1, 1)), 0.0, 1e-15);
}

TEST(ParityMapping, TwoOrbitalExpansion) {
  const auto terms = parity_annihilation(0, 2);
  ASSERT_EQ(terms.size(), 2u);
  PauliSum expected(2);
  expected.add({0.5, 0.0}, PauliString::parse("XX"));
  expected.add({0.0, 0.5}, PauliString::parse("XY"));
  EXPECT_EQ(PauliSum(2, terms).terms(), expected.terms());
  // parity-basis image of the occupation-basis annihilator
  const Mat u = testing::parity_basis_change(2);
  const Mat want = u * testing::occupation_annihilator(0, 2) * u.adjoint();
  EXPECT_LT((dense(terms, 2) - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ParityMapping, AnnihilatorsMatchOccupationBasis) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Mat u = testing::parity_basis_change(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Mat want = u * testing::occupation_annihilator(j, n) * u.adjoint();
      EXPECT_LT((dense(parity_annihilation(j, n), n) - want).cwiseAbs().maxCoeff(), 1e-15) << n << " " << j;
      EXPECT_LT((dense(parity_creation(j, n), n) - want.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(ParityMapping, CanonicalAnticommutation) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto dim = static_cast<Eigen::Index>(1) << n;
    std::vector<Mat> a, ad;
    for (std::size_t j = 0; j < n; ++j) {
      a.push_back(dense(parity_annihilation(j, n), n));
      ad.push_back(dense(parity_creation(j, n), n));
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const Mat id = p == q ? Mat(Mat::Identity(dim, dim)) : Mat(Mat::Zero(dim, dim));
        EXPECT_LT((a[p] * ad[q] + ad[q] * a[p] - id).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((a[p] * a[q] + a[q] * a[p]).cwiseAbs().maxCoeff(), 1e-12);
      }
  }
  EXPECT_THROW(parity_annihilation(3, 3), ValidationError);
}

TEST(MapHamiltonian, SingleOrbital) {
  FermionHamiltonian h;
  h.n_orbs = 1;
  h.h1[{0, 0}] = -0.7;
  const auto q = map_hamiltonian(h);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q.terms()[0].string.to_string(), "I");
  EXPECT_DOUBLE_EQ(q.terms()[0].coeff.real(), -0.35);
  EXPECT_EQ(q.terms()[1].string.to_string(), "Z");
  EXPECT_DOUBLE_EQ(q.terms()[1].coeff.real(), 0.35);
}

TEST(MapHamiltonian, ZeroHamiltonian) {
  FermionHamiltonian h;
  h.n_orbs = 3;
  EXPECT_TRUE(map_hamiltonian(h).empty());
}

TEST(MapHamiltonian, RejectsNonHermitian) {
  FermionHamiltonian h;
  h.n_orbs = 2;
  h.h1[{0, 1}] = 1.0;
  EXPECT_THROW(map_hamiltonian(h), NumericalError);
}

TEST(MapHamiltonian, MatrixEqualsFockMatrixUnderBasisChange) {
  const auto b = testing::make_basis({{6, 1, 1, -1}, {6, 1, 1, 1}, {6, 0, 1, -1}, {6, 0, 1, 1}});
  const auto h = testing::random_symmetric_hamiltonian(b, 21);
  const auto q = map_hamiltonian(h);
  for (const auto& t : q) EXPECT_EQ(t.coeff.imag(), 0.0);
  const Mat u = testing::parity_basis_change(4);
  const Mat want = u * testing::fock_matrix(h) * u.adjoint();
  EXPECT_LT((dense_matrix(q) - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((spectrum(q) - testing::hermitian_eigenvalues(testing::fock_matrix(h))).cwiseAbs().maxCoeff(), 1e-10);
}

/// Random Hermitian one- and two-body tensor without any symmetry, complex entries.
FermionHamiltonian random_complex_hamiltonian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FermionHamiltonian h;
  h.n_orbs = n;
  const int ni = static_cast<int>(n);
  for (int p = 0; p < ni; ++p)
    for (int q = p; q < ni; ++q) {
      const Complex v(u(rng), p == q ? 0.0 : u(rng));
      h.h1[{p, q}] = v;
      h.h1[{q, p}] = std::conj(v);
    }
  for (int p = 0; p < ni; ++p)
    for (int q = 0; q < ni; ++q)
      for (int r = 0; r < ni; ++r)
        for (int s = 0; s < ni; ++s) {
          if (h.h2.contains({p, q, r, s})) continue;
          Complex v(0.3 * u(rng), 0.3 * u(rng));
          if (p == s && q == r) v = v.real();
          h.h2[{p, q, r, s}] = v;
          h.h2[{s, r, q, p}] = std::conj(v);
        }
  return h;
}

TEST(MapHamiltonian, ComplexIntegralsMatchFock) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto h = random_complex_hamiltonian(n, 100 + n);
    const Mat u = testing::parity_basis_change(n);
    const Mat want = u * testing::fock_matrix(h) * u.adjoint();
    const auto q = map_hamiltonian(h);
    EXPECT_LT((dense_matrix(q) - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MapHamiltonian, SectorSpectraMatchFci) {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::array<int, 4>> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back({6, static_cast<int>(i % 2 ? 0 : 1), 1, i % 4 < 2 ? 1 : -1});
    const auto b = testing::make_basis(labels);
    const auto h = testing::random_symmetric_hamiltonian(b, 40 + n);
    const auto q = map_hamiltonian(h);
    const Mat qm = dense_matrix(q);
    const Mat fm = testing::fock_matrix(h);
    // sector: particle-number parity and spatial parity
    for (int np = 0; np < 2; ++np)
      for (int sp = 0; sp < 2; ++sp) {
        std::vector<Eigen::Index> occ_states, qubit_states;
        for (std::uint64_t f = 0; f < (std::uint64_t{1} << n); ++f) {
          int parity = 0;
          for (std::size_t i = 0; i < n; ++i)
            if ((f >> i) & 1U) parity += static_cast<int>(b[i].parity);
          if (std::popcount(f) % 2 != np || parity % 2 != sp) continue;
          occ_states.push_back(static_cast<Eigen::Index>(f));
          qubit_states.push_back(static_cast<Eigen::Index>(testing::prefix_parity(f, n)));
        }
        if (occ_states.empty()) continue;
        const auto d = static_cast<Eigen::Index>(occ_states.size());
        Mat a(d, d), c(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j) {
            a(i, j) = fm(occ_states[i], occ_states[j]);
            c(i, j) = qm(qubit_states[i], qubit_states[j]);
          }
        EXPECT_LT((testing::hermitian_eigenvalues(a) - testing::hermitian_eigenvalues(c)).cwiseAbs().maxCoeff(), 1e-10);
      }
  }
}

TEST(Taper, ConstantFromTaperedZ) {
  QubitHamiltonian h(3, {{1.0, PauliString::parse("ZII")}});
  const auto t = taper(h, {1, 1}, 1, 2);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.terms()[0].string.to_string(), "I");
  EXPECT_DOUBLE_EQ(t.terms()[0].coeff.real(), 1.0);
}

TEST(Taper, SignFlip) {
  QubitHamiltonian h(3, {{1.0, PauliString::parse("ZIX")}});
  const auto t = taper(h, {1, -1}, 1, 2);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.terms()[0].string.to_string(), "X");
  EXPECT_DOUBLE_EQ(t.terms()[0].coeff.real(), -1.0);
}

TEST(Taper, RejectsSymmetryViolation) {
  QubitHamiltonian h(3, {{1.0, PauliString::parse("XII")}});
  EXPECT_THROW(taper(h, {1, 1}, 1, 2), ValidationError);
}

TEST(Taper, BasisAGroundEnergyMatchesSector) {
  const auto base = testing::basis_a();
  const auto ref0 = OccupationDeterminant::from_indices(testing::basis_a_reference(), base);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto r = reorder_odd_before_even(base, testing::random_symmetric_hamiltonian(base, seed), ref0);
    const auto q = map_hamiltonian(r.hamiltonian);
    const auto sector = TaperSector::of(r.reference);
    const auto t = taper(q, sector, static_cast<std::size_t>(*r.parity_qubit), 7);
    EXPECT_EQ(t.n_qubits(), 6u);
    const double tapered = exact_ground_energy(t).energy;
    // untapered sector: Z eigenvalues of the two symmetry qubits fixed
    const auto pq = static_cast<std::size_t>(*r.parity_qubit);
    const auto sector_filter = [&](Mask bits) {
      return ((bits >> pq) & 1U) == (sector.whole_system_parity < 0 ? 1U : 0U) &&
             ((bits >> 7) & 1U) == (sector.particle_parity < 0 ? 1U : 0U);
    };
    const double untapered = exact_ground_energy(q, {}, sector_filter).energy;
    EXPECT_NEAR(tapered, untapered, 1e-10);
    // and the same number straight from the occupation-basis oracle
    Mat fm = testing::fock_matrix(r.hamiltonian);
    std::vector<Eigen::Index> idx;
    for (std::uint64_t f = 0; f < 256; ++f) {
      int p = 0;
      for (std::size_t i = 0; i < 8; ++i)
        if ((f >> i) & 1U) p += static_cast<int>(r.basis[i].parity);
      if (std::popcount(f) % 2 == 1 && p % 2 == 1) idx.push_back(static_cast<Eigen::Index>(f));
    }
    Mat sub(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fm(idx[i], idx[j]);
    EXPECT_NEAR(tapered, testing::hermitian_eigenvalues(sub)(0), 1e-10);
  }
}

TEST(Partition, SmallExample) {
  QubitHamiltonian h(2, {{1.0, PauliString::parse("IZ")}, {0.5, PauliString::parse("ZI")}, {0.7, PauliString::parse("XX")}});
  const auto g = partition_commuting(h);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].size(), 2u);
  EXPECT_EQ(g[1].size(), 1u);
  EXPECT_EQ(g[1][0].string.to_string(), "XX");
}

TEST(Partition, DiagonalAndEmpty) {
  QubitHamiltonian d(2, {{1.0, PauliString::parse("IZ")}, {0.5, PauliString::parse("ZZ")}, {0.7, PauliString::parse("ZI")}});
  EXPECT_EQ(partition_commuting(d).size(), 1u);
  EXPECT_TRUE(partition_commuting(QubitHamiltonian(3)).empty());
}

TEST(Partition, GroupsCommuteAndCoverTerms) {
  std::mt19937_64 rng(9);
  for (std::size_t n = 4; n <= 8; ++n) {
    const Mask lim = (Mask{1} << n) - 1;
    std::vector<PauliTerm> terms;
    for (int i = 0; i < 40; ++i) terms.push_back({std::uniform_real_distribution<double>(-1, 1)(rng), PauliString(n, rng() & lim, rng() & lim)});
    const QubitHamiltonian h(PauliSum(n, terms));
    std::size_t covered = 0;
    for (const auto& g : partition_commuting(h)) {
      covered += g.size();
      for (const auto& a : g)
        for (const auto& b : g) EXPECT_TRUE(a.string.commutes_with(b.string));
    }
    EXPECT_EQ(covered, h.size());
  }
}

TEST(QubitHamiltonianIo, RoundTrip) {
  QubitHamiltonian h(3, {{0.25, PauliString::parse("XYZ")}, {-1.5, PauliString::parse("III")}});
  std::ostringstream out;
  write_qubit_hamiltonian(out, h);
  std::istringstream in(out.str());
  const auto back = read_qubit_hamiltonian(in);
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(back.terms()[i].string, h.terms()[i].string);
    EXPECT_EQ(back.terms()[i].coeff, h.terms()[i].coeff);
  }
}

}  // namespace
}  // namespace atomq
