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
#include <string>
#include <vector>

#include "hamlab/circuit.hpp"

namespace hamlab {

/// Pauli expansion of a gate on an n-qubit register.
PauliSum gate_pauli(const Gate &g, int n);
/// Dense matrix of a gate on its own support (support order, first qubit MSB).
Matrix local_gate_matrix(const Gate &g);

// ---- telescoping --------------------------------------------------------

/// P_phi = sum_i |1><1|_i = (n/2) I - (1/2) sum_i Z_i.
OperatorSum product_projector_sum(int n);

/// h(k) = (U_k ... U_1) P_phi (U_k ... U_1)^dagger. Clifford gates go through
/// clifford_conjugate; other gates through their local Pauli transfer.
/// Throws CardinalityBlowup when the prefix holds more than
/// `max_non_clifford` non-Clifford gates.
OperatorSum telescope(const Circuit &c, int k, int max_non_clifford = 4);
int non_clifford_count(const Circuit &c, int k);

// ---- clock construction -------------------------------------------------

enum class ClockEncoding { Unary, Binary };
ClockEncoding clock_encoding_from_string(const std::string &s);
std::string to_string(ClockEncoding e);

struct ClockHamiltonian {
  int n_system = 0;
  int n_clock = 0;
  int L = 0;  // padded gate count
  int M = 0;  // identity padding
  ClockEncoding encoding = ClockEncoding::Binary;
  double J = 1.0;
  double K = 1.0;
  std::uint64_t input = 0;
  OperatorSum H_in;
  OperatorSum H_prop;
  std::vector<OperatorSum> H_t;  // one per padded gate, t = 1..L
  /// Penalty on clock states outside the valid set: domain-wall violations
  /// for the unary clock, values t > L for the binary clock.
  OperatorSum H_clock;
  /// Nonzero clock time; only part of the initial-time operator.
  OperatorSum H_clockinit;

  int n_total() const { return n_system + n_clock; }
  /// J H_in + K H_prop + J H_clock.
  OperatorSum total() const;
  /// H_in + H_clock + H_clockinit; its kernel is |input>|t = 0>.
  OperatorSum initial() const;
};

/// Pads `c` with M identities and builds the clock operators. Qubits are
/// ordered system first, clock second.
ClockHamiltonian clock_hamiltonian(const Circuit &c, double J, double K, int M, ClockEncoding enc,
                                   std::uint64_t input = 0);

/// Basis index of clock value t in the chosen encoding.
std::uint64_t clock_index(int t, int L, ClockEncoding enc);
int clock_qubits(int L, ClockEncoding enc);

StateVector history_state(const Circuit &c, int M, ClockEncoding enc, std::uint64_t input = 0);

struct GapAnalysis {
  int L = 0;
  double J = 1.0, K = 1.0;
  RVector chain_spectrum;   // exact spectrum of the rotated propagation chain
  RVector closed_form;      // 1 - cos(pi k / (L + 1))
  double max_chain_error = 0.0;
  double gap_exact = 0.0;   // of J H_in + K H_prop
  double gap_bound = 0.0;   // max{J, K pi^2 / (2 (L+1)^2)}
  bool bound_holds = false; // gap_exact >= gap_bound - 1e-9
};

/// Uses the rotated frame, where the combined operator is independent of the
/// circuit: one system qubit and an (L+1)-level clock chain.
GapAnalysis gap_analysis(int L, double J, double K);
/// (L+1) x (L+1) tridiagonal chain matrix of the rotated propagation term.
RMatrix propagation_chain(int L);

struct OverlapReport {
  int L = 0;
  int M = 0;
  double measured = 0.0;     // weight of the history state on output times L+1..L+M
  double closed_form = 0.0;  // 1 / (1 + (L+1)/M), 0 when M = 0
};

OverlapReport acceptance_overlap(const Circuit &c, int M, ClockEncoding enc = ClockEncoding::Binary,
                                 std::uint64_t input = 0);

/// W = sum_t U_t ... U_1 (x) |t><t| on the binary clock.
Matrix clock_rotation(const Circuit &c, int M);

// ---- gate compilation ---------------------------------------------------

/// R(theta) = X sin(theta) + Z cos(theta).
Matrix reflection_R(double theta);
/// R_ij(phi) = (1/2)(I + Z_i) + (1/2)(I - Z_i) (sin(phi) X_j + cos(phi) Z_j), i the first qubit.
Matrix reflection_Rij(double phi);

/// Every output gate is Hermitian and squares to the identity; the product
/// equals the input unitary up to a global phase.
Circuit self_inverse_compile(const Circuit &c);

/// U~ = Re U (x) I + Im U (x) (|1><0| - |0><1|); the extra qubit is last.
RMatrix realify_gate(const Matrix &U);
/// Amplitude index j maps to 2j (real part) and 2j+1 (imaginary part).
RVector realify_encode(const Vector &psi);
Vector realify_decode(const RVector &v);

std::string report_json(const ClockHamiltonian &h, const GapAnalysis &g, const OverlapReport &o);

}  // namespace hamlab
