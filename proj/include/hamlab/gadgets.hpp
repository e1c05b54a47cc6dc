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

#include <vector>

#include "hamlab/pauli.hpp"

namespace hamlab {

/// Target H_else + alpha * A (x) B on an n-qubit system. A and B must have
/// unit operator norm and act on disjoint qubits.
struct GadgetSpec {
  double alpha = 1.0;
  OperatorSum A;
  OperatorSum B;
  OperatorSum H_else;
  double epsilon = 0.05;

  int n_system() const { return A.n; }
  OperatorSum target() const;
};

/// H~ = penalty + V on n_system + 1 qubits; the slack qubit w is the last one.
struct GadgetRealization {
  int n_system = 0;
  int slack = 0;
  double delta = 0.0;
  double alpha = 0.0;
  OperatorSum penalty;  // delta |1><1|_w
  OperatorSum V;
  OperatorSum target;   // on the system register
  double norm_V = 0.0;
  bool hypothesis_ok = true;  // ||V|| <= delta / 2
  double z_max = 0.0;

  OperatorSum total() const { return penalty + V; }
};

struct SelfEnergy {
  double z = 0.0;
  Matrix exact;           // Schur complement on the slack-|0> block
  Matrix exact_resolvent; // z - (P G~(z) P)^-1
  Matrix series;
  int order = 0;
};

struct GadgetReport {
  double max_spectral_error = 0.0;
  std::vector<double> spectral_errors;  // per low-lying level
  std::vector<double> z_grid;
  std::vector<double> self_energy_error;  // ||Sigma(z) - H_eff|| per z
  double sup_self_energy_error = 0.0;
  double max_leakage = 0.0;  // slack |1> population of the low-lying states
  bool hypothesis_ok = true;
  bool pass = false;
};

enum class GadgetBuilder { Subdivision, YY };

/// (2|alpha|/eps + 1)(|alpha| + eps + 2||H_else||)
double subdivision_delta(double alpha, double epsilon, double norm_else);

void check_spec(const GadgetSpec &spec);
GadgetRealization subdivision_gadget(const GadgetSpec &spec);
GadgetRealization subdivision_gadget(const GadgetSpec &spec, double delta);
/// Two-qubit target alpha Y1 Y2 + H_else; delta must be given since no
/// closed-form gap is available for this construction.
GadgetRealization yy_gadget(double alpha, const OperatorSum &H_else, double delta, double epsilon);

/// Default z grid: 101 points on [-z_max, z_max], z_max = ||H_else|| + |alpha| + eps.
std::vector<double> z_grid(double z_max, int points = 101);

SelfEnergy self_energy(const GadgetRealization &g, double z, int order);
/// Norm bound on the series terms omitted at `order`.
double series_remainder_bound(const GadgetRealization &g, double z, int order);
GadgetReport verify_gadget(const GadgetRealization &g, double epsilon, const std::vector<double> &zs);
GadgetReport verify_gadget(const GadgetRealization &g, double epsilon);

struct DeltaSearch {
  double delta_min = 0.0;
  double analytic = 0.0;  // 0 when no closed form exists
  int iterations = 0;
  bool monotone = true;   // error decreased along the sampled bracket
};

/// Bisection (relative 1e-4) for the delta where the spectral error equals eps.
DeltaSearch minimal_delta_search(const GadgetSpec &spec, GadgetBuilder builder);
/// Least-squares slope of log(delta) against log(1/eps).
double loglog_slope(const std::vector<double> &eps, const std::vector<double> &deltas);

/// Standard two-qubit target: alpha Z1 Z2 with H_else = 0.
GadgetSpec zz_spec(double alpha, double epsilon);
/// alpha Y1 Y2 with H_else = 0; A = Y1, B = Y2 for bookkeeping.
GadgetSpec yy_spec(double alpha, double epsilon);

}  // namespace hamlab
