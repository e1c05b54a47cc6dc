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

#include "hamlab/boolean.hpp"
#include "hamlab/error.hpp"

using namespace hamlab;

namespace {

RVector diagonal(const OperatorSum &op) { return realize_dense(op).diagonal().real(); }

PseudoBooleanPoly random_cubic(int n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::uniform_int_distribution<int> v(0, n - 1), deg(0, 3);
  PseudoBooleanPoly f(n);
  for (int t = 0; t < 8; ++t) {
    std::vector<int> vars;
    for (int d = deg(rng); d > 0; --d) vars.push_back(v(rng));
    f.add(c(rng), vars);
  }
  return f;
}

}  // namespace

TEST(CanonicalExpand, BellIndicator) {
  // 1 - (x1 - x2)^2 on (00, 01, 10, 11)
  PseudoBooleanPoly f = canonical_expand(2, {1, 0, 0, 1});
  EXPECT_DOUBLE_EQ(f.coefficient({}), 1.0);
  EXPECT_DOUBLE_EQ(f.coefficient({0}), -1.0);
  EXPECT_DOUBLE_EQ(f.coefficient({1}), -1.0);
  EXPECT_DOUBLE_EQ(f.coefficient({0, 1}), 2.0);
}

TEST(CanonicalExpand, PathGraphStateSigns) {
  // (-1)^{xy + yz} as 1 - 2xy - 2yz + 4xyz
  std::vector<double> table(8);
  for (std::uint64_t s = 0; s < 8; ++s) {
    int x = var_bit(s, 3, 0), y = var_bit(s, 3, 1), z = var_bit(s, 3, 2);
    table[s] = ((x * y + y * z) % 2) ? -1.0 : 1.0;
  }
  PseudoBooleanPoly f = canonical_expand(3, table);
  f.prune(1e-12);
  EXPECT_EQ(f.coeffs.size(), 4u);
  EXPECT_DOUBLE_EQ(f.coefficient({}), 1.0);
  EXPECT_DOUBLE_EQ(f.coefficient({0, 1}), -2.0);
  EXPECT_DOUBLE_EQ(f.coefficient({1, 2}), -2.0);
  EXPECT_DOUBLE_EQ(f.coefficient({0, 1, 2}), 4.0);
}

TEST(CanonicalExpand, ZeroTableGivesZeroPolynomial) {
  PseudoBooleanPoly f = canonical_expand(3, std::vector<double>(8, 0.0));
  f.prune();
  EXPECT_TRUE(f.coeffs.empty());
}

TEST(CanonicalExpand, TriangleWithEvaluationAndOperator) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 5;
    PseudoBooleanPoly f = random_cubic(n, rng);
    std::vector<double> table(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = f.evaluate(x);
    PseudoBooleanPoly g = canonical_expand(n, table);
    RVector d = diagonal(pseudo_to_operator(f));
    for (std::uint64_t x = 0; x < table.size(); ++x) {
      EXPECT_NEAR(g.evaluate(x), table[x], 1e-12);
      EXPECT_NEAR(d[static_cast<Eigen::Index>(x)], table[x], 1e-12);
    }
    // Grading: at most C(n, d) monomials per degree, 2^n in total.
    g.prune(1e-12);
    EXPECT_LE(g.coeffs.size(), table.size());
  }
}

TEST(PseudoToOperator, VariableIsP1) {
  OperatorSum p = pseudo_to_operator(PseudoBooleanPoly::variable(1, 0));
  RVector d = diagonal(p);
  EXPECT_DOUBLE_EQ(d[0], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
  EXPECT_TRUE(pseudo_to_operator(PseudoBooleanPoly(2)).terms.empty());
}

TEST(EmbedFormula, AndIsProductOfP1) {
  OperatorSum h = embed_formula(f_and(f_var(0), f_var(1)), 2);
  RVector d = diagonal(h);
  EXPECT_DOUBLE_EQ(d[0], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 0.0);
  EXPECT_DOUBLE_EQ(d[2], 0.0);
  EXPECT_DOUBLE_EQ(d[3], 1.0);
}

TEST(EmbedFormula, NegationIsP0) {
  RVector d = diagonal(embed_formula(f_not(f_var(0)), 1));
  EXPECT_DOUBLE_EQ(d[0], 1.0);
  EXPECT_DOUBLE_EQ(d[1], 0.0);
}

TEST(EmbedFormula, OrCountsSatisfiedDisjuncts) {
  RVector d = diagonal(embed_formula(f_or(f_var(0), f_var(1)), 2));
  EXPECT_DOUBLE_EQ(d[3], 2.0);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
}

TEST(KernelEmbed, ClausePenaltyIsSingleProjector) {
  // x0 or not x1 or x2 is violated only on x = (0, 1, 0).
  Formula clause = f_or(f_or(f_var(0), f_not(f_var(1))), f_var(2));
  RVector d = diagonal(kernel_embed(clause, 3));
  for (Eigen::Index x = 0; x < 8; ++x) EXPECT_DOUBLE_EQ(d[x], x == 0b010 ? 1.0 : 0.0);
}

TEST(KernelEmbed, VariableAndConjunction) {
  RVector dx = diagonal(kernel_embed(f_var(0), 1));
  EXPECT_DOUBLE_EQ(dx[0], 1.0);
  EXPECT_DOUBLE_EQ(dx[1], 0.0);
  RVector d = diagonal(kernel_embed(f_and(f_var(0), f_var(1)), 2));
  EXPECT_DOUBLE_EQ(d[3], 0.0);
  for (int x = 0; x < 3; ++x) EXPECT_GE(d[x], 1.0);
}

TEST(KernelEmbed, TautologyIsZero) {
  OperatorSum h = kernel_embed(f_or(f_var(0), f_not(f_var(0))), 1);
  EXPECT_LT(diagonal(h).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(KernelEmbed, NonnegativeIntegerDiagonal) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    CnfInstance inst = random_ksat(5, 6, 3, rng);
    Formula f = f_const(true);
    for (const auto &c : inst.clauses) {
      Formula cl = f_const(false);
      for (const auto &l : c) cl = f_or(cl, l.positive ? f_var(l.var) : f_not(f_var(l.var)));
      f = f_and(f, cl);
    }
    RVector d = diagonal(kernel_embed(f, 5));
    for (Eigen::Index x = 0; x < d.size(); ++x) {
      EXPECT_GE(d[x], -1e-10);
      EXPECT_NEAR(d[x], std::round(d[x]), 1e-10);
      EXPECT_EQ(d[x] < 0.5, violated_clauses(inst, static_cast<std::uint64_t>(x)) == 0);
    }
  }
}

TEST(SpinForm, AndPenalty) {
  PseudoBooleanPoly f(3);
  f.add(1.0, {2}).add(1.0, {0, 1}).add(-2.0, {0, 1, 2});
  SpinPoly s = to_spin(f);
  EXPECT_NEAR(s.coefficient({}), 0.5, 1e-15);
  EXPECT_NEAR(s.coefficient({2}), -0.25, 1e-15);
  EXPECT_NEAR(s.coefficient({0, 2}), -0.25, 1e-15);
  EXPECT_NEAR(s.coefficient({1, 2}), -0.25, 1e-15);
  EXPECT_NEAR(s.coefficient({0, 1, 2}), 0.25, 1e-15);
  EXPECT_NEAR(s.coefficient({0, 1}), 0.0, 1e-15);
}

TEST(SpinForm, RoundTrip) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    PseudoBooleanPoly f = random_cubic(4, rng);
    PseudoBooleanPoly g = from_spin(to_spin(f));
    for (std::uint64_t x = 0; x < 16; ++x) EXPECT_NEAR(g.evaluate(x), f.evaluate(x), 1e-12);
  }
}

TEST(SpinForm, ZZHamiltonianCommutesWithGlobalFlip) {
  SpinPoly s(3);
  s.add(1.0, {0, 1}).add(-0.7, {1, 2}).add(0.3, {0, 2});
  Matrix h = realize_dense(spin_to_operator(s));
  OperatorSum xxx(3);
  xxx.add(1.0, "XXX");
  Matrix x = realize_dense(xxx);
  EXPECT_LT((h * x - x * h).norm(), 1e-10);
}

TEST(Dimacs, ParseBasic) {
  CnfInstance inst = parse_dimacs("p cnf 2 1\n1 -2 0\n");
  ASSERT_EQ(inst.n, 2);
  ASSERT_EQ(inst.clauses.size(), 1u);
  EXPECT_EQ(inst.clauses[0][0].var, 0);
  EXPECT_TRUE(inst.clauses[0][0].positive);
  EXPECT_EQ(inst.clauses[0][1].var, 1);
  EXPECT_FALSE(inst.clauses[0][1].positive);
}

TEST(Dimacs, Errors) {
  try {
    parse_dimacs("c only\nc comments\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyInstance);
  }
  try {
    parse_dimacs("p cnf 2 1\n3 0\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::VariableOutOfRange);
  }
}

TEST(Dimacs, RoundTrip) {
  std::mt19937_64 rng(2);
  CnfInstance inst = random_ksat(6, 10, 3, rng);
  CnfInstance back = parse_dimacs(to_dimacs(inst));
  for (std::uint64_t x = 0; x < 64; ++x) EXPECT_EQ(violated_clauses(back, x), violated_clauses(inst, x));
}

TEST(CnfHamiltonian, WorkedExampleHasZeroGround) {
  CnfInstance inst = parse_dimacs("p cnf 4 3\n1 -3 4 0\n-2 3 -4 0\n-1 2 3 0\n");
  OperatorSum h = cnf_to_hamiltonian(inst);
  RVector d = diagonal(h);
  EXPECT_NEAR(d[0b0000], 0.0, 1e-12);
  EXPECT_NEAR(d[0b0001], 0.0, 1e-12);
  for (std::uint64_t x = 0; x < 16; ++x) EXPECT_NEAR(d[static_cast<Eigen::Index>(x)], violated_clauses(inst, x), 1e-12);
}

TEST(CnfHamiltonian, SingleClauseUniformExpectation) {
  CnfInstance inst = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
  EXPECT_NEAR(expectation(cnf_to_hamiltonian(inst), StateVector::plus(3)), 0.125, 1e-12);
  CnfInstance empty;
  empty.n = 3;
  EXPECT_LT(realize_dense(cnf_to_hamiltonian(empty)).norm(), 1e-15);
}

TEST(ViolationHistogram, MatchesDirectCount) {
  std::mt19937_64 rng(17);
  CnfInstance inst = random_ksat(10, 30, 3, rng);
  std::vector<std::uint64_t> h = violation_histogram(inst);
  std::vector<std::uint64_t> direct(h.size(), 0);
  for (std::uint64_t x = 0; x < 1024; ++x) ++direct[static_cast<std::size_t>(violated_clauses(inst, x))];
  EXPECT_EQ(h, direct);
}

TEST(RandomKsat, DistinctVariablesAndUniqueClauses) {
  std::mt19937_64 rng(1);
  CnfInstance inst = random_ksat(8, 40, 3, rng);
  EXPECT_EQ(inst.clauses.size(), 40u);
  for (const auto &c : inst.clauses) {
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NE(c[0].var, c[1].var);
    EXPECT_NE(c[1].var, c[2].var);
    EXPECT_NE(c[0].var, c[2].var);
  }
}

TEST(NumberPartition, SmallCases) {
  EXPECT_DOUBLE_EQ(spin_minimum(number_partition({1, 1})).first, 0.0);
  EXPECT_DOUBLE_EQ(spin_minimum(number_partition({1, 2, 3})).first, 0.0);
  EXPECT_DOUBLE_EQ(spin_minimum(number_partition({1, 2})).first, 1.0);
}

TEST(PolyJson, RoundTrip) {
  std::mt19937_64 rng(6);
  PseudoBooleanPoly f = random_cubic(4, rng);
  PseudoBooleanPoly g = pseudo_from_json(to_json(f));
  for (std::uint64_t x = 0; x < 16; ++x) EXPECT_DOUBLE_EQ(g.evaluate(x), f.evaluate(x));
  Formula h = formula_from_json(R"({"op":"and","args":[{"op":"var","i":0},{"op":"not","args":[{"op":"var","i":1}]}]})");
  EXPECT_TRUE(h->evaluate(0b10, 2));
  EXPECT_FALSE(h->evaluate(0b11, 2));
}
