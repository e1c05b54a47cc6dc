// Copyright 2026 The hamlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hamlab/error.hpp"
#include "hamlab/pauli.hpp"

using namespace hamlab;

namespace {

OperatorSum op(int n, std::initializer_list<std::pair<double, const char *>> terms) {
  OperatorSum o(n);
  for (const auto &[c, w] : terms) o.add(c, w);
  return o;
}

Matrix dense(std::initializer_list<std::initializer_list<cplx>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto &r : rows) {
    Eigen::Index j = 0;
    for (cplx v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

PauliString random_word(int n, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> d(0, 3);
  PauliString p(n);
  for (int q = 0; q < n; ++q) p.set(q, "IXYZ"[d(rng)]);
  return p;
}

}  // namespace

TEST(RealizeDense, SingleZ) {
  Matrix m = realize_dense(op(1, {{1.0, "Z"}}));
  EXPECT_LT((m - dense({{1, 0}, {0, -1}})).norm(), 1e-15);
}

TEST(RealizeDense, ControlledNotFromProjectors) {
  // P1 (x) X + P0 (x) I with P1 = (I - Z)/2 and P0 = (I + Z)/2.
  OperatorSum cn = op(2, {{0.5, "IX"}, {-0.5, "ZX"}, {0.5, "II"}, {0.5, "ZI"}});
  Matrix expect = dense({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  EXPECT_LT((realize_dense(cn) - expect).norm(), 1e-15);
}

TEST(RealizeDense, TwoPathLaplacian) {
  Matrix m = realize_dense(op(1, {{1.0, "I"}, {-1.0, "X"}}));
  EXPECT_LT((m - dense({{1, -1}, {-1, 1}})).norm(), 1e-15);
}

TEST(RealizeDense, QubitZeroIsMostSignificant) {
  Matrix m = realize_dense(op(2, {{1.0, "ZI"}}));
  EXPECT_DOUBLE_EQ(m(1, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(m(2, 2).real(), -1.0);
}

TEST(RealizeDense, LimitEnforced) {
  EXPECT_THROW(realize_dense(OperatorSum(kDenseLimit + 1)), Error);
}

TEST(Expectation, Basics) {
  StateVector zero = StateVector::basis(1, 0);
  EXPECT_DOUBLE_EQ(expectation(op(1, {{1.0, "Z"}}), zero), 1.0);
  EXPECT_NEAR(expectation(op(1, {{1.0, "X"}}), zero), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(expectation(op(1, {{1.0, "I"}, {-1.0, "X"}}), zero), 1.0);
}

TEST(Ground, TwoPathLaplacian) {
  GroundResult g = ground(op(1, {{1.0, "I"}, {-1.0, "X"}}));
  EXPECT_NEAR(g.energy, 0.0, 1e-12);
  EXPECT_NEAR(g.gap, 2.0, 1e-12);
  EXPECT_NEAR(std::abs(g.state.amp[0]), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(g.state.amp[1]), 1 / std::sqrt(2.0), 1e-12);
}

TEST(Ground, PauliZ) {
  GroundResult g = ground(op(1, {{1.0, "Z"}}));
  EXPECT_NEAR(g.energy, -1.0, 1e-12);
  EXPECT_NEAR(g.gap, 2.0, 1e-12);
  EXPECT_NEAR(g.state.probability(1), 1.0, 1e-12);
}

TEST(Ground, DegenerateAndReportsFlag) {
  // P1 (x) P1 = (II - ZI - IZ + ZZ) / 4
  GroundResult g = ground(op(2, {{0.25, "II"}, {-0.25, "ZI"}, {-0.25, "IZ"}, {0.25, "ZZ"}}));
  EXPECT_NEAR(g.energy, 0.0, 1e-12);
  EXPECT_TRUE(g.degenerate);
  EXPECT_EQ(g.degeneracy, 3);
  EXPECT_NEAR(g.gap, 1.0, 1e-12);
}

TEST(Clifford, ImagesOfGenerators) {
  CliffordCircuit h{1, {}};
  h.h(0);
  OperatorSum x = clifford_conjugate(op(1, {{1.0, "Z"}}), h);
  EXPECT_EQ(x.terms[0].p.word(), "X");
  EXPECT_DOUBLE_EQ(x.terms[0].c, 1.0);

  CliffordCircuit p{1, {}};
  p.p(0);
  OperatorSum y = clifford_conjugate(op(1, {{1.0, "X"}}), p);
  EXPECT_EQ(y.terms[0].p.word(), "Y");
  EXPECT_DOUBLE_EQ(y.terms[0].c, 1.0);

  CliffordCircuit cn{2, {}};
  cn.cn(0, 1);
  OperatorSum xx = clifford_conjugate(op(2, {{1.0, "XI"}}), cn);
  EXPECT_EQ(xx.terms[0].p.word(), "XX");
}

TEST(Clifford, MatchesDenseConjugationOnRandomCircuits) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> kind(0, 2), qubit(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    CliffordCircuit c{4, {}};
    for (int g = 0; g < 12; ++g) {
      int a = qubit(rng), b = qubit(rng);
      switch (kind(rng)) {
        case 0: c.h(a); break;
        case 1: c.p(a); break;
        default:
          if (a != b) c.cn(a, b);
      }
    }
    OperatorSum o(4);
    o.add(0.7, random_word(4, rng)).add(-1.3, random_word(4, rng));
    Matrix u = clifford_matrix(c);
    Matrix expect = u * realize_dense(o) * u.adjoint();
    EXPECT_LT((realize_dense(clifford_conjugate(o, c)) - expect).norm(), 1e-12);
  }
}

TEST(PauliAlgebra, ProductMatchesMatrices) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    PauliString a = random_word(3, rng), b = random_word(3, rng);
    Matrix lhs = pauli_matrix(a * b);
    Matrix rhs = pauli_matrix(a) * pauli_matrix(b);
    EXPECT_LT((lhs - rhs).norm(), 1e-14);
    bool commute = (pauli_matrix(a) * pauli_matrix(b) - pauli_matrix(b) * pauli_matrix(a)).norm() < 1e-12;
    EXPECT_EQ(a.commutes(b), commute);
  }
}

TEST(PauliAlgebra, ParseAndPrint) {
  PauliString p = PauliString::parse("-iXZ");
  EXPECT_EQ(p.n, 2);
  EXPECT_EQ(p.word(), "XZ");
  EXPECT_EQ(p.phase % 4, 3);
  EXPECT_THROW(PauliString::parse("XQ"), Error);
}

TEST(OperatorSumTest, MergeAndCardinality) {
  OperatorSum o = op(2, {{1.0, "ZI"}, {2.0, "ZI"}, {0.5, "XX"}, {-0.5, "XX"}});
  o.merge(1e-14);
  EXPECT_EQ(o.cardinality(), 1u);
  EXPECT_DOUBLE_EQ(o.terms[0].c, 3.0);
}

TEST(OperatorSumTest, ImaginaryPhaseRejected) {
  OperatorSum o(1);
  EXPECT_THROW(o.add(1.0, PauliString::parse("iX")), Error);
}

TEST(OperatorSumTest, JsonAndTextRoundTrip) {
  OperatorSum o = op(3, {{0.25, "XIZ"}, {-1.5, "YYI"}, {2.0, "III"}});
  EXPECT_LT((realize_dense(operator_from_json(to_json(o))) - realize_dense(o)).norm(), 1e-15);
  EXPECT_LT((realize_dense(from_text(to_text(o))) - realize_dense(o)).norm(), 1e-15);
}

TEST(PauliSumTest, FromMatrixRoundTrip) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Matrix m(8, 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) m(i, j) = cplx(g(rng), g(rng));
  }
  PauliSum s = PauliSum::from_matrix(m);
  Matrix back = Matrix::Zero(8, 8);
  for (const auto &[c, p] : s.terms) back += c * pauli_matrix(p);
  EXPECT_LT((back - m).norm(), 1e-12);
}

TEST(Evolve, QuantumTwoPath) {
  OperatorSum h = op(1, {{1.0, "I"}, {-1.0, "X"}});
  for (double t : {0.0, 0.3, 1.1, 2.7}) {
    StateVector s = evolve(h, t, StateVector::basis(1, 0), EvolveMode::Quantum);
    EXPECT_NEAR(s.probability(0), (1 + std::cos(2 * t)) / 2, 1e-12);
  }
}

TEST(Evolve, StochasticTwoPath) {
  OperatorSum h = op(1, {{1.0, "I"}, {-1.0, "X"}});
  for (double t : {0.0, 0.4, 2.0}) {
    StateVector s = evolve(h, t, StateVector::basis(1, 0), EvolveMode::Stochastic);
    EXPECT_NEAR(s.amp[0].real(), 0.5 * (1 + std::exp(-2 * t)), 1e-12);
    EXPECT_NEAR(s.amp[1].real(), 0.5 * (1 - std::exp(-2 * t)), 1e-12);
  }
}

TEST(Trotter, CommutingCaseIsExact) {
  OperatorSum a = op(2, {{1.0, "ZI"}}), b = op(2, {{0.7, "IZ"}});
  StateVector psi = StateVector::plus(2);
  StateVector lhs = trotter_evolve(a, b, 1.3, 1, psi);
  StateVector rhs = evolve(a + b, 1.3, psi, EvolveMode::Quantum);
  EXPECT_LT((lhs.amp - rhs.amp).norm(), 1e-12);
}

TEST(Trotter, FirstOrderConvergence) {
  OperatorSum a = op(1, {{1.0, "X"}}), b = op(1, {{1.0, "Z"}});
  StateVector psi = StateVector::basis(1, 0);
  StateVector exact = evolve(a + b, 1.0, psi, EvolveMode::Quantum);
  double e50 = (trotter_evolve(a, b, 1.0, 50, psi).amp - exact.amp).norm();
  double e100 = (trotter_evolve(a, b, 1.0, 100, psi).amp - exact.amp).norm();
  EXPECT_LE(e100, 0.5 * e50 * 1.2);
  EXPECT_THROW(trotter_evolve(a, b, 1.0, 0, psi), Error);
}

TEST(Stoquastic, SignOfOffDiagonals) {
  EXPECT_TRUE(is_stoquastic(op(1, {{-1.0, "X"}})));
  EXPECT_FALSE(is_stoquastic(op(1, {{1.0, "X"}})));
  EXPECT_TRUE(is_stoquastic(op(2, {{3.0, "ZZ"}, {-2.0, "ZI"}})));
}

TEST(Stochastic, RowToColumnConvention) {
  Matrix row = dense({{1, -1}, {-2, 2}});
  Matrix col = row_to_column_generator(row);
  EXPECT_TRUE(is_column_stochastic_generator(col));
}
