// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "atomq/compiler.hpp"
#include "atomq/exact.hpp"
#include "support/oracles.hpp"

namespace atomq {
namespace {

using testing::Mat;

ExponentialGroup random_group(std::size_t n, std::size_t max_terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  ExponentialGroup g(n);
  for (const auto& [x, z] : testing::random_commuting_masks(n, max_terms, rng))
    g.terms.push_back({PauliString(n, x, z), ang(rng)});
  return g;
}

/// prod_n exp(-i alpha_n P_n / 2) from dense matrices.
Mat dense_product(const ExponentialGroup& g) {
  const auto dim = static_cast<Eigen::Index>(1) << g.n_qubits;
  Mat u = Mat::Identity(dim, dim);
  for (const auto& t : g.terms) u = testing::expm_hermitian(dense_matrix(t.string), t.angle / 2) * u;
  return u;
}

double exact_distance(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(Greedy, XYZTermStructure) {
  // X on qubit 2, Y on qubit 1, Z on qubit 0
  const ExponentialGroup g(3, {{PauliString::parse("XYZ"), 0.4}});
  const Circuit c = compile_greedy(g);
  ASSERT_EQ(c.size(), 9u);
  EXPECT_EQ(c.gates[0], Gate::v(1));
  EXPECT_EQ(c.gates[1], Gate::h(2));
  EXPECT_EQ(c.gates[2], Gate::cnot(0, 1));
  EXPECT_EQ(c.gates[3], Gate::cnot(1, 2));
  EXPECT_EQ(c.gates[4], Gate::rz(2, 0.4));
  EXPECT_EQ(c.gates[5], Gate::cnot(1, 2));
  EXPECT_EQ(c.gates[6], Gate::cnot(0, 1));
  EXPECT_EQ(c.gates[7], Gate::vdg(1));
  EXPECT_EQ(c.gates[8], Gate::h(2));
  EXPECT_LT(exact_distance(circuit_unitary(c), dense_product(g)), 1e-12);
}

TEST(Greedy, SingleZ) {
  const Circuit c = compile_greedy(ExponentialGroup(1, {{PauliString::parse("Z"), 0.3}}));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates[0], Gate::rz(0, 0.3));
  EXPECT_EQ(gate_counts(c).cnot, 0u);
}

TEST(Greedy, RandomGroupMatchesDenseProduct) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_group(5, 6, rng);
    EXPECT_LT(exact_distance(circuit_unitary(compile_greedy(g)), dense_product(g)), 1e-10);
  }
}

TEST(Greedy, IdentityTermIsGlobalPhase) {
  const ExponentialGroup g(2, {{PauliString::identity(2), 0.8}, {PauliString::parse("ZZ"), 0.1}});
  const Circuit c = compile_greedy(g);
  EXPECT_DOUBLE_EQ(c.global_phase, -0.4);
  EXPECT_LT(exact_distance(circuit_unitary(c), dense_product(g)), 1e-12);
}

TEST(Diagonalize, AlreadyDiagonal) {
  const ExponentialGroup g(2, {{PauliString::parse("IZ"), 0.1}, {PauliString::parse("ZI"), 0.2}});
  const auto d = diagonalize_group(g);
  EXPECT_TRUE(d.clifford.empty());
  EXPECT_EQ(d.diagonal, g.terms);
}

TEST(Diagonalize, SingleX) {
  const auto d = diagonalize_group(ExponentialGroup(1, {{PauliString::parse("X"), 0.5}}));
  ASSERT_EQ(d.clifford.size(), 1u);
  EXPECT_EQ(d.clifford.gates[0], Gate::h(0));
  ASSERT_EQ(d.diagonal.size(), 1u);
  EXPECT_EQ(d.diagonal[0].string.to_string(), "Z");
  EXPECT_DOUBLE_EQ(d.diagonal[0].angle, 0.5);
}

TEST(Diagonalize, RejectsNonCommuting) {
  const ExponentialGroup g(1, {{PauliString::parse("X"), 0.5}, {PauliString::parse("Z"), 0.5}});
  EXPECT_THROW(diagonalize_group(g), ValidationError);
  EXPECT_THROW(compile_three_step(g), ValidationError);
}

TEST(Diagonalize, RandomSetsAgreeWithDenseConjugation) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_group(5, 8, rng);
    const auto d = diagonalize_group(g);
    for (const auto& gate : d.clifford.gates)
      EXPECT_TRUE(gate.kind == GateKind::CNOT || gate.kind == GateKind::H || gate.kind == GateKind::V);
    const Mat w = circuit_unitary(d.clifford);
    ASSERT_EQ(d.diagonal.size(), g.terms.size());
    for (std::size_t i = 0; i < g.terms.size(); ++i) {
      EXPECT_TRUE(d.diagonal[i].string.is_diagonal());
      const double sign = d.diagonal[i].angle / g.terms[i].angle;
      EXPECT_NEAR(std::abs(sign), 1.0, 1e-15);
      const Mat conj = w * dense_matrix(g.terms[i].string) * w.adjoint();
      EXPECT_LT(exact_distance(conj, sign * dense_matrix(d.diagonal[i].string)), 1e-12);
    }
  }
}

TEST(SignedPauli, ConjugationMatchesDense) {
  std::mt19937_64 rng(13);
  const Gate gates[] = {Gate::h(0), Gate::h(1), Gate::v(0), Gate::v(1), Gate::vdg(0), Gate::vdg(1),
                        Gate::x(0), Gate::x(1), Gate::cnot(0, 1), Gate::cnot(1, 0)};
  for (const auto& g : gates)
    for (Mask x = 0; x < 4; ++x)
      for (Mask z = 0; z < 4; ++z) {
        const PauliString p(2, x, z);
        SignedPauli s = SignedPauli::from(p);
        s.conjugate(g);
        Circuit c(2);
        c.add(g);
        const Mat u = circuit_unitary(c);
        EXPECT_LT(exact_distance(u * dense_matrix(p) * u.adjoint(), s.hermitian_sign() * dense_matrix(s.string())),
                  1e-14);
      }
}

TEST(PhaseNetwork, TwoQubitParity) {
  const double beta = 0.9;
  const auto net = synthesize_phase_network(2, {{PauliString::parse("ZZ"), beta}});
  ASSERT_EQ(net.circuit.size(), 2u);
  EXPECT_EQ(net.circuit.gates[0], Gate::cnot(0, 1));
  EXPECT_EQ(net.circuit.gates[1], Gate::rz(1, beta));
  EXPECT_EQ(net.residual, LinearMapGF2(2, {0b01, 0b11}));
  for (Mask b = 0; b < 4; ++b) {
    const auto out = apply_circuit(StateVector::basis(2, b), net.circuit);
    const int parity = popcount(b) & 1;
    const Complex want = std::polar(1.0, -beta * (parity ? -1.0 : 1.0) / 2);
    EXPECT_LT(std::abs(out[net.residual.apply(b)] - want), 1e-15);
  }
}

TEST(PhaseNetwork, SingleZ) {
  const auto net = synthesize_phase_network(1, {{PauliString::parse("Z"), 0.2}});
  ASSERT_EQ(net.circuit.size(), 1u);
  EXPECT_EQ(net.residual, LinearMapGF2::identity(1));
}

TEST(PhaseNetwork, RejectsOffDiagonal) {
  EXPECT_THROW(synthesize_phase_network(1, {{PauliString::parse("X"), 0.2}}), ValidationError);
}

TEST(PhaseNetwork, CompositeWithInverseMatchesDense) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> ang(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    ExponentialGroup g(4);
    while (g.terms.size() < 5) {
      const Mask z = rng() & 15;
      if (!z || std::any_of(g.terms.begin(), g.terms.end(), [&](const auto& t) { return t.string.z() == z; })) continue;
      g.terms.push_back({PauliString(4, 0, z), ang(rng)});
    }
    const auto net = synthesize_phase_network(4, g.terms);
    Circuit c = net.circuit;
    c.append(synthesize_linear_inverse(net.residual));
    for (const auto& gate : c.gates) EXPECT_TRUE(gate.kind == GateKind::CNOT || gate.kind == GateKind::Rz);
    EXPECT_LT(exact_distance(circuit_unitary(c), dense_product(g)), 1e-10);
  }
}

LinearMapGF2 random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Mask> rows(n);
    for (auto& r : rows) r = rng() & ((Mask{1} << n) - 1);
    LinearMapGF2 m(n, rows);
    if (m.invertible()) return m;
  }
}

TEST(LinearInverse, IdentityAndSingleRowAdd) {
  EXPECT_TRUE(synthesize_linear_inverse(LinearMapGF2::identity(5)).empty());
  LinearMapGF2 m = LinearMapGF2::identity(3);
  m.add_row(0, 2);
  const Circuit c = synthesize_linear_inverse(m);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates[0], Gate::cnot(0, 2));
}

TEST(LinearInverse, Singular) {
  EXPECT_THROW(synthesize_linear_inverse(LinearMapGF2(2, {0b11, 0b11})), NumericalError);
}

TEST(LinearInverse, ExhaustiveOnRandomMaps) {
  std::mt19937_64 rng(15);
  for (std::size_t n : {2u, 4u, 6u, 8u, 10u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_invertible(n, rng);
      const Circuit c = synthesize_linear_inverse(a);
      for (const auto& g : c.gates) ASSERT_EQ(g.kind, GateKind::CNOT);
      for (Mask b = 0; b < (Mask{1} << n); ++b) {
        Mask y = a.apply(b);
        // CNOT circuit acts by bit operations
        for (const auto& g : c.gates)
          if ((y >> g.control) & 1U) y ^= Mask{1} << g.target;
        ASSERT_EQ(y, b) << "n=" << n;
      }
    }
  }
}

TEST(ThreeStep, SingleZ) {
  const Circuit c = compile_three_step(ExponentialGroup(1, {{PauliString::parse("Z"), 0.3}}));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates[0], Gate::rz(0, 0.3));
}

TEST(ThreeStep, RandomGroupsMatchGreedyAndDense) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 4);
    const auto g = random_group(n, 8, rng);
    const Mat want = dense_product(g);
    const Mat three = circuit_unitary(compile_three_step(g));
    const Mat greedy = circuit_unitary(compile_greedy(g));
    EXPECT_LT(testing::distance_up_to_phase(three, want), 1e-10);
    EXPECT_LT(testing::distance_up_to_phase(greedy, want), 1e-10);
    // both track the global phase exactly
    EXPECT_LT(exact_distance(three, want), 1e-10);
    EXPECT_LT(exact_distance(greedy, want), 1e-10);
  }
}

TEST(ThreeStep, MedianCnotCountNotAboveGreedy) {
  std::mt19937_64 rng(17);
  std::vector<std::size_t> greedy, three;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_group(3 + static_cast<std::size_t>(trial % 4), 8, rng);
    greedy.push_back(gate_counts(compile_greedy(g)).cnot);
    three.push_back(gate_counts(compile_three_step(g)).cnot);
  }
  std::sort(greedy.begin(), greedy.end());
  std::sort(three.begin(), three.end());
  EXPECT_LE(three[three.size() / 2], greedy[greedy.size() / 2]);
}

TEST(MakeControlled, XBecomesCnot) {
  Circuit c(1);
  c.add(Gate::x(0));
  const Circuit cc = make_controlled(c);
  ASSERT_EQ(cc.size(), 1u);
  EXPECT_EQ(cc.gates[0], Gate::cnot(1, 0));
}

TEST(MakeControlled, RzIdentity) {
  const double th = 1.1;
  Circuit c(1);
  c.add(Gate::rz(0, th));
  const Circuit cc = make_controlled(c);
  ASSERT_EQ(cc.size(), 4u);
  EXPECT_EQ(cc.gates[0], Gate::rz(0, th / 2));
  EXPECT_EQ(cc.gates[1], Gate::cnot(1, 0));
  EXPECT_EQ(cc.gates[2], Gate::rz(0, -th / 2));
  EXPECT_EQ(cc.gates[3], Gate::cnot(1, 0));
  Mat want = Mat::Identity(4, 4);
  want.bottomRightCorner(2, 2) = circuit_unitary(c);
  EXPECT_LT(exact_distance(circuit_unitary(cc), want), 1e-14);
}

TEST(MakeControlled, ToffoliCounts) {
  Circuit c(2);
  c.add(Gate::cnot(0, 1));
  EXPECT_EQ(gate_counts(make_controlled(c)), (GateCounts{9, 6, 0}));
}

TEST(MakeControlled, RandomCircuitsAreBlockDiagonal) {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> ang(-3, 3);
  std::uniform_int_distribution<int> kind(0, 8), q(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c(3);
    for (int i = 0; i < 25; ++i) {
      const int t = q(rng);
      const int o = (t + 1 + (rng() & 1)) % 3;
      switch (kind(rng)) {
        case 0: c.add(Gate::rx(t, ang(rng))); break;
        case 1: c.add(Gate::ry(t, ang(rng))); break;
        case 2: c.add(Gate::rz(t, ang(rng))); break;
        case 3: c.add(Gate::h(t)); break;
        case 4: c.add(Gate::v(t)); break;
        case 5: c.add(Gate::vdg(t)); break;
        case 6: c.add(Gate::x(t)); break;
        case 7: c.add(Gate::phase(t, ang(rng))); break;
        default: c.add(Gate::cnot(o, t));
      }
    }
    c.global_phase = ang(rng);
    const Circuit cc = make_controlled(c);
    for (const auto& g : cc.gates) EXPECT_FALSE(g.is_controlled() && g.kind != GateKind::CNOT);
    Mat want = Mat::Identity(16, 16);
    want.bottomRightCorner(8, 8) = circuit_unitary(c);
    const Mat got = circuit_unitary(cc);
    EXPECT_LT(exact_distance(got, want), 1e-10);
    const Mat zc = dense_matrix(PauliString::parse("ZIII"));
    EXPECT_LT((got * zc - zc * got).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(MakeControlled, RejectsControlledInput) {
  Circuit c(2);
  c.add(Gate::controlled(Gate::h(0), 1));
  EXPECT_THROW(make_controlled(c), ValidationError);
}

TEST(GateCounts, Basics) {
  EXPECT_EQ(gate_counts(Circuit(2)), (GateCounts{0, 0, 0}));
  Circuit c(2);
  c.add(Gate::h(0)).add(Gate::cnot(0, 1)).add(Gate::rz(1, 0.1));
  const auto k = gate_counts(c);
  EXPECT_EQ(k.single_qubit, 2u);
  EXPECT_EQ(k.cnot, 1u);
}

}  // namespace
}  // namespace atomq
