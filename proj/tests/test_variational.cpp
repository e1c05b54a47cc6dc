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

#include <bit>
#include <cmath>
#include <random>

#include "hamlab/error.hpp"
#include "hamlab/variational.hpp"

using namespace hamlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

CnfInstance single_clause() { return parse_dimacs("p cnf 3 1\n1 2 3 0\n"); }

OperatorSum random_hermitian(int n, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> d(0, 3);
  OperatorSum o(n);
  for (int t = 0; t < 12; ++t) {
    PauliString p(n);
    for (int q = 0; q < n; ++q) p.set(q, "IXYZ"[d(rng)]);
    o.add(g(rng), p);
  }
  return o.merged(1e-14);
}

}  // namespace

// ---- circuits

TEST(Simulate, BasicGates) {
  Circuit h(1);
  h.h(0);
  StateVector plus = simulate(h);
  EXPECT_NEAR(plus.amp[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(plus.amp[1].real(), 1 / std::sqrt(2.0), 1e-15);

  Circuit cn(2);
  cn.cn(0, 1);
  EXPECT_NEAR(simulate(cn, StateVector::basis(2, 0b10)).probability(0b11), 1.0, 1e-15);

  Circuit rz(1);
  rz.rotation(0, {0, 0, 1}, 0.7);
  StateVector s = simulate(rz);
  EXPECT_NEAR(std::abs(s.amp[0] - std::exp(cplx(0, -0.7))), 0.0, 1e-15);
}

TEST(CircuitJson, RoundTrip) {
  Circuit c(3);
  c.h(0).cn(0, 1).rotation(2, {0.6, 0.0, 0.8}, 0.3).controlled_phase({0, 1, 2}, 0.9);
  c.controlled({0}, 2, ControlledOp::Rx, 0.4);
  Circuit back = circuit_from_json(to_json(c));
  EXPECT_LT(phase_distance(circuit_matrix(back), circuit_matrix(c)), 1e-14);
}

TEST(CircuitValidate, RejectsBadGates) {
  Circuit same(2);
  same.cn(0, 0);
  EXPECT_THROW(same.validate(), Error);
  Circuit axis(2);
  axis.rotation(0, {1, 1, 0}, 0.2);
  EXPECT_THROW(axis.validate(), Error);
  Circuit notu(2);
  notu.unitary({0}, Matrix::Ones(2, 2));
  EXPECT_THROW(notu.validate(), Error);
}

// ---- QAOA

TEST(Qaoa, DepthZeroIsMeanDiagonal) {
  std::mt19937_64 rng(1);
  CnfInstance inst = random_ksat(5, 7, 3, rng);
  EXPECT_NEAR(qaoa_energy(cnf_to_hamiltonian(inst), 0, {}, {}), 7.0 / 8.0, 1e-12);
}

TEST(Qaoa, SingleClauseDepthOneBeatsUniform) {
  CnfInstance inst = single_clause();
  OptimizerConfig cfg;
  cfg.restarts = 8;
  DeficitResult d = reachability_deficit(inst, 1, cfg);
  EXPECT_LT(d.qaoa_energy, 0.125);
  // Grid oracle on (gamma, beta) in [0, pi)^2.
  OperatorSum v = cnf_to_hamiltonian(inst);
  double best = 1.0;
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) best = std::min(best, qaoa_energy(v, 1, {kPi * i / 200}, {kPi * j / 200}));
  }
  EXPECT_NEAR(d.qaoa_energy, best, 1e-3);
}

TEST(Qaoa, VariationalPrinciple) {
  std::mt19937_64 rng(9);
  CnfInstance inst = random_ksat(5, 20, 3, rng);
  OperatorSum v = cnf_to_hamiltonian(inst);
  double e0 = cost_diagonal(v).minCoeff();
  std::uniform_real_distribution<double> a(0, 2 * kPi);
  for (int t = 0; t < 100; ++t) {
    EXPECT_GE(qaoa_energy(v, 2, {a(rng), a(rng)}, {a(rng), a(rng)}) - e0, -1e-10);
  }
}

TEST(Qaoa, NonDiagonalCostRejected) {
  OperatorSum x(1);
  x.add(1.0, "X");
  try {
    cost_diagonal(x);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonDiagonalCost);
  }
}

// ---- optimizer

TEST(Optimizer, QuadraticBowl) {
  OptimizerConfig cfg;
  cfg.restarts = 1;
  OptimizeResult r = nelder_mead([](const std::vector<double> &x) { return (x[0] - 1) * (x[0] - 1); }, {3.0}, cfg);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
}

TEST(Optimizer, RestartsFindGlobalMinimum) {
  // Minima near -1 (global) and +1.
  auto f = [](const std::vector<double> &x) { return (x[0] * x[0] - 1) * (x[0] * x[0] - 1) + 0.3 * x[0]; };
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.seed = seed;
    cfg.init_low = -2;
    cfg.init_high = 2;
    hits += optimize(f, 1, cfg).x[0] < 0;
  }
  EXPECT_GE(hits, 9);
}

TEST(Optimizer, DeterministicAcrossThreadCounts) {
  auto f = [](const std::vector<double> &x) { return std::sin(3 * x[0]) + std::cos(2 * x[1]) + 0.1 * x[0] * x[1]; };
  OptimizerConfig one;
  one.seed = 4;
  OptimizerConfig many = one;
  many.threads = 4;
  OptimizeResult a = optimize(f, 2, one), b = optimize(f, 2, many);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.value, b.value);
}

// ---- deficits

TEST(Deficit, SatisfiableLowDensityReachesGround) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  double total = 0;
  for (std::uint32_t s = 0; s < 5; ++s) {
    std::seed_seq ss{s};
    std::mt19937_64 rng(ss);
    total += reachability_deficit(random_ksat(6, 6, 3, rng), 2, cfg).f;
  }
  EXPECT_LT(total / 5, 0.05);
}

// ---- search

TEST(Grover, ReferenceValues) {
  EXPECT_NEAR(grover_reference(2, 1), 1.0, 1e-12);
  EXPECT_NEAR(grover_reference(5, 0), 1.0 / 32, 1e-15);
  EXPECT_NEAR(grover_reference(3, 2), search_probability_full(3, 5, {kPi, kPi}, {kPi, kPi}), 1e-12);
}

TEST(Grover, PiAnglesRecoverGroverForEveryDepth) {
  for (int n = 2; n <= 5; ++n) {
    for (int p = 1; p <= 4; ++p) {
      std::vector<double> a(static_cast<std::size_t>(p), kPi);
      EXPECT_NEAR(search_probability(n, a, a), grover_reference(n, p), 1e-12);
    }
  }
}

TEST(Grover, RecursionMatchesFullSimulation) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
    double reference = search_probability(4, a, b);
    for (std::uint64_t omega : {0ULL, 5ULL, 15ULL}) {
      EXPECT_NEAR(search_probability_full(4, omega, a, b), reference, 1e-10);
    }
  }
}

TEST(Grover, TransferAtMinusTwoIsGroverStep) {
  Eigen::Matrix2cd t = grover_transfer(3, kPi, kPi);
  Eigen::Vector2cd s(std::sqrt(7.0 / 8.0), std::sqrt(1.0 / 8.0));
  Eigen::Vector2cd out = t * s;
  EXPECT_NEAR(std::norm(out[1]), grover_reference(3, 1), 1e-12);
}

TEST(Grover, TwoLevelImprovementAtEightStates) {
  OptimizerConfig cfg;
  cfg.restarts = 32;
  GroverResult r = variational_grover(3, 2, GroverMode::TwoLevel, cfg);
  EXPECT_NEAR(r.improvement_pct, 5.77, 0.3);
  EXPECT_NEAR(r.angle, 2.12, 0.05);
  EXPECT_NEAR(r.probability, 1.0, 1e-8);
}

TEST(Grover, OracleAndDiffusionCircuits) {
  int n = 3;
  double alpha = 1.3, beta = -0.4;
  Matrix v = Matrix::Identity(8, 8);
  v(6, 6) = std::exp(cplx(0, alpha));
  EXPECT_LT(phase_distance(circuit_matrix(oracle_circuit(n, 6, alpha)), v), 1e-10);
  Matrix h = Matrix::Constant(8, 8, 1.0 / std::sqrt(8.0));
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) {
      if (std::popcount(static_cast<unsigned>(i & j)) % 2) h(i, j) *= -1;
    }
  }
  Matrix k = Matrix::Identity(8, 8);
  k(0, 0) = std::exp(cplx(0, beta));  // X^n flips |1..1> to |0..0>
  EXPECT_LT(phase_distance(circuit_matrix(diffusion_circuit(n, beta)), h * k * h), 1e-10);
}

TEST(Grover, ModeNames) {
  for (GroverMode m : {GroverMode::VarDiffusion, GroverMode::RestrictedDiffusion, GroverMode::Matched, GroverMode::TwoLevel}) {
    EXPECT_EQ(grover_mode_from_string(to_string(m)), m);
  }
  EXPECT_THROW(grover_mode_from_string("fast"), Error);
}

// ---- k-controlled gates

TEST(GateCount, SmallValuesAndClosedForm) {
  EXPECT_EQ(gate_count(1), 1u);
  EXPECT_EQ(gate_count(2), 4u);
  EXPECT_EQ(gate_count(3), 10u);
  EXPECT_EQ(gate_count(4), 16u);
  for (int k = 1; k <= 1024; ++k) {
    std::uint64_t g = gate_count(k);
    EXPECT_EQ(g, gate_count_closed(k));
    auto kk = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    EXPECT_LE(kk, g);
    EXPECT_LE(static_cast<double>(g), 2.5 * static_cast<double>(kk));
  }
}

TEST(KControlled, DecompositionMatchesDirectConstruction) {
  Matrix minus_i_x(2, 2);
  minus_i_x << 0, cplx(0, -1), cplx(0, -1), 0;
  for (int k = 2; k <= 4; ++k) {
    Circuit c = k_controlled_decompose(k, KTarget::X);
    EXPECT_EQ(c.gates.size(), gate_count(k));
    EXPECT_LT((circuit_matrix(c) - k_controlled_matrix(k, minus_i_x)).norm(), 1e-10) << "k = " << k;
  }
  Circuit one = k_controlled_decompose(1, KTarget::X);
  EXPECT_EQ(one.gates.size(), 1u);
}

TEST(KControlled, RotationTargets) {
  for (int k = 2; k <= 3; ++k) {
    Circuit rx = k_controlled_decompose(k, KTarget::Rx, 0.7);
    Circuit rz = k_controlled_decompose(k, KTarget::Rz, -1.1);
    Matrix ux = single_qubit_matrix(ControlledOp::Rx, 0.7), uz = single_qubit_matrix(ControlledOp::Rz, -1.1);
    EXPECT_LT((circuit_matrix(rx) - k_controlled_matrix(k, ux)).norm(), 1e-10);
    EXPECT_LT((circuit_matrix(rz) - k_controlled_matrix(k, uz)).norm(), 1e-10);
  }
}

TEST(KControlled, ControlledPhaseExpansion) {
  Circuit c = decompose_controlled_phase(4, {0, 1, 2, 3}, 0.8);
  Circuit direct(4);
  direct.controlled_phase({0, 1, 2, 3}, 0.8);
  EXPECT_LT((circuit_matrix(c) - circuit_matrix(direct)).norm(), 1e-10);
}

// ---- entanglement

TEST(Schmidt, BellProductAndGhz) {
  Circuit bell(2);
  bell.h(0).cn(0, 1);
  SchmidtResult b = schmidt_ebits(simulate(bell), 0b01);
  EXPECT_EQ(b.rank, 2);
  EXPECT_NEAR(b.ebits, 1.0, 1e-12);

  SchmidtResult p = schmidt_ebits(StateVector::plus(3), 0b001);
  EXPECT_EQ(p.rank, 1);
  EXPECT_NEAR(p.ebits, 0.0, 1e-12);

  Circuit ghz(4);
  ghz.h(0).cn(0, 1).cn(1, 2).cn(2, 3);
  StateVector g = simulate(ghz);
  for (std::uint64_t mask = 1; mask < 15; ++mask) {
    SchmidtResult r = schmidt_ebits(g, mask);
    EXPECT_EQ(r.rank, 2);
    EXPECT_NEAR(r.ebits, 1.0, 1e-12);
  }
  EXPECT_THROW(schmidt_ebits(g, 0), Error);
}

TEST(AreaLaw, NoTwoQubitGatesMeansNoEntanglement) {
  Circuit c(4);
  c.h(0).h(2).rotation(1, {1, 0, 0}, 0.3);
  AreaLawReport r = area_law_check(c);
  EXPECT_EQ(r.layers, 0);
  EXPECT_NEAR(r.max_ebits, 0.0, 1e-12);
}

TEST(AreaLaw, SingleGateBoundedByOneEbit) {
  Circuit c(4);
  c.h(1).cn(1, 2);
  AreaLawReport r = area_law_check(c);
  EXPECT_EQ(r.layers, 1);
  EXPECT_LE(r.max_ebits, 1.0 + 1e-9);
  EXPECT_EQ(r.depth_violations, 0);
}

TEST(AreaLaw, ParallelLayerExceedsDepthReadingButNotCrossingCount) {
  // One layer of two disjoint Bell pairs: the cut {0, 2} | {1, 3} carries 2 ebits.
  Circuit c(4);
  c.h(0).h(2).cn(0, 1).cn(2, 3);
  AreaLawReport r = area_law_check(c);
  EXPECT_EQ(r.layers, 1);
  EXPECT_NEAR(r.max_ebits, 2.0, 1e-9);
  EXPECT_GT(r.depth_violations, 0);
  EXPECT_EQ(r.crossing_violations, 0);
}

TEST(AreaLaw, CrossingBoundOnRandomCircuits) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    AreaLawReport r = area_law_check(random_layered_circuit(6, 10, seed));
    EXPECT_EQ(r.crossing_violations, 0);
    EXPECT_LE(r.max_ebits, 3.0 + 1e-9);
  }
}

// ---- overlap bounds

TEST(OverlapBounds, GroundStateGivesOne) {
  std::mt19937_64 rng(3);
  OperatorSum h = random_hermitian(3, rng);
  GroundResult g = ground(h);
  OverlapBounds b = energy_overlap_bounds(h, g.state);
  EXPECT_NEAR(b.lower, 1.0, 1e-9);
  EXPECT_NEAR(b.upper, 1.0, 1e-9);
  EXPECT_NEAR(b.exact, 1.0, 1e-9);
}

TEST(OverlapBounds, SandwichOnRandomInstances) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  int checked = 0;
  while (checked < 100) {
    OperatorSum h = random_hermitian(4, rng);
    GroundResult gr = ground(h);
    if (gr.degenerate) continue;
    Vector noise(16);
    for (Eigen::Index i = 0; i < 16; ++i) noise[i] = cplx(g(rng), g(rng));
    Vector phi = gr.state.amp + 0.05 * noise;
    phi.normalize();
    OverlapBounds b;
    try {
      b = energy_overlap_bounds(h, StateVector(4, phi));
    } catch (const Error &e) {
      ASSERT_EQ(e.kind(), ErrorKind::EnergyAboveGap);
      continue;
    }
    EXPECT_LE(b.lower, b.exact + 1e-12);
    EXPECT_LE(b.exact, b.upper + 1e-12);
    ++checked;
  }
}

TEST(OverlapBounds, EnergyAboveGapRejected) {
  OperatorSum z(1);
  z.add(1.0, "Z");
  try {
    energy_overlap_bounds(z, StateVector::basis(1, 0));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnergyAboveGap);
  }
}

// ---- discretized interpolation

TEST(Adiabatic, EqualEndpointsAreExact) {
  OperatorSum h(2);
  h.add(1.0, "XI").add(0.5, "ZZ");
  AdiabaticResult r = adiabatic_discretize(h, h, 4, 3.0, 64);
  EXPECT_LT(r.distance, 1e-10);
  EXPECT_LT((r.u_split - r.u_exact).norm(), 1e-10);
}

TEST(Adiabatic, DistanceWithinBoundAndConvergesToExactSchedule) {
  OperatorSum h0(2), hf(2);
  h0.add(-1.0, "XI").add(-1.0, "IX");
  hf.add(1.0, "ZZ").add(0.4, "ZI").add(-0.3, "IZ");
  Vector start = ground(h0).state.amp, target = ground(hf).state.amp;
  double last_dev = 1e9, last_gap = 1e9;
  for (int r : {8, 32, 128}) {
    AdiabaticResult a = adiabatic_discretize(h0, hf, r);
    EXPECT_LE(a.distance, a.bound + 1e-8) << "r = " << r;
    double dev = ((a.u_split - a.u_exact) * start).norm();
    double exact_fid = std::norm(target.dot(a.u_exact * start));
    double gap = std::abs(a.ground_fidelity - exact_fid);
    EXPECT_LT(dev, last_dev) << "r = " << r;
    EXPECT_LT(gap, last_gap) << "r = " << r;
    last_dev = dev;
    last_gap = gap;
  }
}
