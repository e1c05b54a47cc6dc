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
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hamlab/boolean.hpp"
#include "hamlab/pauli.hpp"

namespace hamlab {

// ---- graphs -------------------------------------------------------------

struct Graph {
  int n = 0;
  RMatrix A;  // symmetric, zero diagonal

  bool connected() const;
};

struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;
};

/// Repeated edges accumulate. Throws on self-loops or out-of-range nodes.
Graph graph_from_edges(int n, const std::vector<Edge> &edges);
/// {"n": 5, "edges": [{"i": 0, "j": 1, "w": 1.0}, ...]}; "w" defaults to 1.
Graph graph_from_json(const std::string &text);
/// One "i j [w]" edge per line; '#' starts a comment; an optional first line
/// holding a single integer fixes the node count.
Graph graph_from_text(const std::string &text);
std::string to_json(const Graph &g);

/// Five-node example graph with degrees (2, 2, 3, 3, 2).
Graph example_graph_five();
/// Uniform weights in [w_low, w_high] on a random spanning tree plus extra
/// edges with probability `density`.
Graph random_connected_graph(int n, double density, double w_low, double w_high, std::uint64_t seed);

// ---- walk generators ----------------------------------------------------

struct WalkGenerators {
  RMatrix A, D, L, S, Q;
  RVector degree;
};

/// L = D - A, S = L D^-1, Q = D^-1/2 L D^-1/2. Checks the similarity
/// S = D^1/2 Q D^-1/2 to 1e-10.
WalkGenerators build_generators(const Graph &g);

/// pi_i = D_ii / sum D.
RVector stationary_state(const WalkGenerators &gen);
/// exp(-t H) p0 for an infinitesimal stochastic H (columns sum to zero).
RVector stochastic_evolve(const RMatrix &H, const RVector &p0, double t);
/// |<j| exp(-i t H) psi0>|^2 for symmetric H.
RVector quantum_probabilities(const RMatrix &H, const Vector &psi0, double t);

struct LongTimeAverage {
  RVector P;          // sum_k |<j|Phi_k|psi0>|^2, Q eigenprojectors
  RVector P_split;    // (1 - eta) pi + eta Omega
  double eta = 0.0;   // 1 - |<phi_0|psi0>|^2
  RVector Omega;      // zero when eta = 0
  RVector pi;
  int projectors = 0; // distinct eigenvalues after merging within 1e-10
};

LongTimeAverage long_time_average(const WalkGenerators &gen, const Vector &psi0);
/// Riemann average of quantum_probabilities(Q, psi0, t) over t in [0, T) with step dt.
RVector time_average_numeric(const WalkGenerators &gen, const Vector &psi0, double T, double dt);

// ---- entropy ------------------------------------------------------------

/// Symmetric, rows summing to zero, off-diagonals <= 0 (tolerance 1e-9).
bool is_generalized_laplacian(const RMatrix &L, double tol = 1e-9);
RMatrix graph_laplacian(const Graph &g);

/// rho = exp(-beta L) / Z; S = -Tr rho log2 rho. Throws NotLaplacian.
double spectral_entropy(const RMatrix &L, double beta);

struct ThermalTerms {
  double entropy = 0.0;
  double trace_L_rho = 0.0;  // Tr{L rho}
  double log2_Z = 0.0;
};
ThermalTerms thermal_terms(const RMatrix &L, double beta);

// ---- PageRank -----------------------------------------------------------

/// Column-stochastic mix d G + (1 - d) / N. Throws NotStochastic.
RMatrix damped_google_matrix(const RMatrix &G, double damping);
/// H = (I - G')^T (I - G') for the damped matrix G'.
RMatrix pagerank_hamiltonian(const RMatrix &G, double damping);
/// Ground vector of pagerank_hamiltonian normalized to entry sum 1.
RVector pagerank_ground(const RMatrix &G, double damping);
RVector pagerank_power(const RMatrix &G, double damping, double tol = 1e-14, int max_iter = 100000);

// ---- phase estimation ---------------------------------------------------

struct PhaseEstimate {
  double lambda = 0.0;
  double residual = 0.0;      // max deviation of the fitted model from the readouts
  std::vector<double> times;
  std::vector<double> p0;     // ancilla readout 1/2 (1 + cos lambda t)
  std::vector<double> p0_quad;  // quadrature readout 1/2 (1 - sin lambda t)
};

/// 32 times uniform in (0, 2 pi / bound], bound = coefficient 1-norm of H.
std::vector<double> default_phase_times(const OperatorSum &H);
/// Simulates the controlled-evolution protocol and a second quadrature run
/// with a phase on the ancilla (which fixes the sign of lambda), unwraps the
/// phase over sorted times and fits the slope. Throws NotEigenvector when
/// ||H phi - lambda phi|| > 1e-8, AliasRisk when the time grid is too coarse
/// or the fit residual exceeds 1e-6.
PhaseEstimate phase_estimate(const OperatorSum &H, const StateVector &phi, std::vector<double> times = {});

// ---- Gibbs states over SAT energies --------------------------------------

struct GibbsState {
  double beta = 0.0;
  std::map<double, std::uint64_t> histogram;  // energy -> multiplicity
  double Z = 0.0;                              // sum count exp(-beta E)

  double probability(double energy) const;  // of one state at that energy
  double occupancy_min() const;              // total weight on the lowest energy
};

GibbsState gibbs_state(const std::map<double, std::uint64_t> &histogram, double beta);
/// Boltzmann weights of an explicit energy list (one entry per basis state).
RVector thermal_probabilities(const RVector &energies, double beta);

/// d exp(-beta lambda_min) / sum_x exp(-beta f(x)) from the violation histogram.
double gibbs_occupancy(const CnfInstance &inst, double beta);

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  double frac_sat = 0.0;
  double mean_p = 0.0;
  double stderr_p = 0.0;
  double mean_lambda_min = 0.0;
};

/// Random 3-SAT with m = round(alpha n) clauses. Instance i at grid point a
/// draws from seed_seq{seed, a, i}, so results do not depend on `threads`.
std::vector<SweepRow> sat_sweep(int n, const std::vector<double> &alpha_grid, int instances,
                                const std::vector<double> &betas, std::uint64_t seed, int threads = 1);
/// Linear interpolation of the first 50% crossing of frac_sat; NaN if none.
double sat_crossing(const std::vector<SweepRow> &rows);

}  // namespace hamlab
