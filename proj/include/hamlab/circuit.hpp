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

#include <array>
#include <string>
#include <vector>

#include "hamlab/pauli.hpp"

namespace hamlab {

/// Target operators of a controlled gate. Rx/Rz use the half-angle
/// convention Rx(t) = exp(-i t X / 2), so they lie in SU(2).
enum class ControlledOp { X, V, Vdg, Z, SqrtZ, SqrtZdg, Rx, Rz };

enum class GateKind {
  Rotation,         // exp(-i angle (axis . sigma)) on `target`
  H, P, X, Y, Z,    // fixed single-qubit gates; P = diag(1, i)
  CN,               // controls = {c}, target t
  ControlledPhase,  // multiplies by exp(i angle) when every qubit in `controls` is 1
  Controlled,       // ControlledOp on `target`, conditioned on all `controls`
  Unitary           // explicit matrix on `qubits` (first listed qubit is most significant)
};

struct Gate {
  GateKind kind = GateKind::H;
  int target = 0;
  std::vector<int> controls;
  std::array<double, 3> axis{0, 0, 1};
  double angle = 0.0;
  ControlledOp op = ControlledOp::X;
  std::vector<int> qubits;
  Matrix matrix;

  /// Qubits touched by the gate, controls first.
  std::vector<int> support() const;
  bool is_clifford() const;
};

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n_qubits) : n(n_qubits) {}

  Circuit &rotation(int q, std::array<double, 3> axis, double theta);
  Circuit &fixed(GateKind kind, int q);
  Circuit &h(int q) { return fixed(GateKind::H, q); }
  Circuit &cn(int c, int t);
  Circuit &controlled_phase(std::vector<int> qubits, double phase);
  Circuit &controlled(std::vector<int> controls, int target, ControlledOp op, double angle = 0.0);
  Circuit &unitary(std::vector<int> qubits, Matrix u);
  Circuit &append(const Circuit &o);

  /// Throws IndexOutOfRange / InvalidArgument on malformed gates.
  void validate() const;
  std::size_t two_qubit_count() const;
};

Matrix single_qubit_matrix(ControlledOp op, double angle = 0.0);
/// 2x2 matrix of a one-qubit gate (Rotation or fixed kinds).
Matrix gate_matrix_1q(const Gate &g);

void apply_gate(const Gate &g, int n, Vector &psi);
StateVector simulate(const Circuit &c, const StateVector &psi0);
StateVector simulate(const Circuit &c);  // from |0...0>
/// Dense unitary of the circuit, n <= kDenseLimit.
Matrix circuit_matrix(const Circuit &c);

/// Frobenius distance between a and b after removing the best global phase.
double phase_distance(const Matrix &a, const Matrix &b);

std::string to_json(const Circuit &c);
Circuit circuit_from_json(const std::string &text);

}  // namespace hamlab
