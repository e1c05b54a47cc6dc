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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hamlab/boolean.hpp"
#include "hamlab/circuit.hpp"

namespace hamlab {

// ---- QAOA ---------------------------------------------------------------

/// |psi> = prod_k exp(-i beta_k sum X) exp(-i gamma_k V) |+>^n for diagonal V.
StateVector qaoa_state(const RVector &diag, const std::vector<double> &gamma, const std::vector<double> &beta);
double qaoa_energy(const OperatorSum &V, int p, const std::vector<double> &gamma, const std::vector<double> &beta);
/// Diagonal of a diagonal operator; throws NonDiagonalCost otherwise.
RVector cost_diagonal(const OperatorSum &V);

// ---- optimizer ----------------------------------------------------------

struct OptimizerConfig {
  int restarts = 16;
  int max_evaluations = 4000;  // per restart
  double tolerance = 1e-10;    // simplex value spread
  std::uint64_t seed = 1;
  double init_low = 0.0;       // random starts are uniform in [init_low, init_high]
  double init_high = 3.141592653589793;
  double initial_step = 0.4;
  int threads = 1;
};

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool budget_exceeded = false;  // some restart hit max_evaluations first
  int best_restart = 0;
};

using Objective = std::function<double(const std::vector<double> &)>;

/// Nelder-Mead from a single start.
OptimizeResult nelder_mead(const Objective &f, std::vector<double> x0, const OptimizerConfig &cfg);
/// Restart 0 starts at x0 when given; the rest start at seeded random points.
/// The objective must be safe to call concurrently when cfg.threads > 1.
OptimizeResult optimize(const Objective &f, int dim, const OptimizerConfig &cfg,
                        const std::vector<double> &x0 = {});

// ---- reachability deficits ----------------------------------------------

struct DeficitResult {
  double f = 0.0;
  double qaoa_energy = 0.0;
  double ground_energy = 0.0;
  std::vector<double> angles;  // gamma_1..p then beta_1..p
  bool budget_exceeded = false;
};

DeficitResult reachability_deficit(const CnfInstance &inst, int p, const OptimizerConfig &cfg);

// ---- variational search -------------------------------------------------

/// Success probability of plain Grover after `steps` oracle/diffusion pairs.
double grover_reference(int n, int steps);
/// One oracle-then-diffusion step K(beta) V(alpha) in the basis
/// (uniform over non-solutions, |omega>).
Eigen::Matrix2cd grover_transfer(int n, double alpha, double beta);
/// Probability of omega after K(b_p)V(a_p)...K(b_1)V(a_1)|s>, via the 2-d recursion.
double search_probability(int n, const std::vector<double> &alpha, const std::vector<double> &beta);
/// Same quantity by full state-vector simulation for a chosen omega.
double search_probability_full(int n, std::uint64_t omega, const std::vector<double> &alpha,
                               const std::vector<double> &beta);

enum class GroverMode { VarDiffusion, RestrictedDiffusion, Matched, TwoLevel };
GroverMode grover_mode_from_string(const std::string &s);
std::string to_string(GroverMode m);

struct GroverResult {
  int n = 0;
  int p = 0;
  GroverMode mode = GroverMode::TwoLevel;
  std::vector<double> alpha;
  std::vector<double> beta;
  double probability = 0.0;
  double grover_probability = 0.0;
  double improvement_pct = 0.0;  // 100 (P - P_grover) / P_grover
  /// Shared oracle/diffusion angle of the one-angle optimum, folded to [0, pi].
  double angle = 0.0;
  double angle_probability = 0.0;
  bool budget_exceeded = false;
};

GroverResult variational_grover(int n, int p, GroverMode mode, const OptimizerConfig &cfg);

/// V(alpha) = 1 + (e^{i alpha} - 1)|omega><omega| as a circuit of X conjugations
/// around a fully controlled phase.
Circuit oracle_circuit(int n, std::uint64_t omega, double alpha);
/// K(beta) = H X (1 + (e^{i beta} - 1)|1..1><1..1|) X H.
Circuit diffusion_circuit(int n, double beta);

// ---- k-controlled gates -------------------------------------------------

/// Recursion g(1) = 1, g(k) = 2 g(floor(k/2)) + 2 g(ceil(k/2)).
std::uint64_t gate_count(int k);
/// Closed form 3k 2^m - 2^(1+2m), m = floor(log2 k).
std::uint64_t gate_count_closed(int k);

enum class KTarget { X, Rx, Rz };
/// Controls are qubits 0..k-1, the target is qubit k. The result contains only
/// singly-controlled Rx/Rz gates. For X the circuit realizes the controlled
/// Rx(pi) = controlled(-iX), i.e. the k-controlled X up to the phase -i on the
/// controlled block.
Circuit k_controlled_decompose(int k, KTarget target, double angle = 0.0);
/// Directly constructed dense k-controlled gate (controls 0..k-1, target k).
Matrix k_controlled_matrix(int k, const Matrix &u);
/// Expands a fully controlled phase into singly-controlled rotations and
/// single-qubit phases.
Circuit decompose_controlled_phase(int n, const std::vector<int> &qubits, double phase);

// ---- entanglement -------------------------------------------------------

struct SchmidtResult {
  int rank = 0;
  double ebits = 0.0;
  RVector singular_values;
};

/// `subset` is a qubit mask (bit q = qubit q) for side A.
SchmidtResult schmidt_ebits(const StateVector &psi, std::uint64_t subset);

struct AreaLawReport {
  int n = 0;
  int layers = 0;            // greedy two-qubit layer depth
  double max_ebits = 0.0;
  std::uint64_t worst_cut = 0;
  int cuts_checked = 0;
  /// Cuts whose ebits exceed min(ceil(n/2), layers).
  int depth_violations = 0;
  /// Cuts whose ebits exceed min(ceil(n/2), gates crossing that cut).
  int crossing_violations = 0;
};

int two_qubit_layers(const Circuit &c);
AreaLawReport area_law_check(const Circuit &c);
/// Random product-input circuit: `layers` layers of disjoint CN pairs on a
/// random matching, each followed by random local rotations.
Circuit random_layered_circuit(int n, int layers, std::uint64_t seed);

// ---- energy / overlap ---------------------------------------------------

struct OverlapBounds {
  double lower = 0.0;
  double upper = 1.0;
  double exact = 0.0;
  double energy = 0.0;  // <phi|H - lambda_0|phi>
  double gap = 0.0;
  double trace = 0.0;   // Tr(H - lambda_0)
};

OverlapBounds energy_overlap_bounds(const Matrix &H, const Vector &phi);
OverlapBounds energy_overlap_bounds(const OperatorSum &H, const StateVector &phi);

// ---- discretized interpolation ------------------------------------------

struct AdiabaticResult {
  int r = 0;
  double T = 0.0;
  Matrix u_split;     // product of W(1 - k/r) V(k/r) factors
  Matrix u_piecewise; // product of exp(-i tau H'_k)
  Matrix u_exact;     // linear schedule, fine midpoint slicing
  double delta = 0.0; // sup_t ||H(t) - H'(t)||
  double bound = 0.0; // sqrt(2 T delta)
  double distance = 0.0;  // ||U - U'|| for the piecewise schedule
  double ground_fidelity = 0.0;  // of u_split applied to the ground of H0
};

AdiabaticResult adiabatic_discretize(const OperatorSum &H0, const OperatorSum &Hf, int r, double T = 10.0,
                                     int fine_slices = 4096);

}  // namespace hamlab
