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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hamlab/error.hpp"

namespace hamlab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr int kDenseLimit = 14;
inline constexpr int kStateLimit = 20;
inline constexpr int kMaxQubits = 64;

/// Index of the basis-state bit that holds qubit q. Qubit 0 is the leftmost
/// tensor factor, i.e. the most significant bit of the basis index.
inline std::uint64_t qubit_bit(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

/// Pauli word with a phase i^phase. Bit q of x/z refers to qubit q; a set x
/// and z bit is a literal Y.
struct PauliString {
  int n = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int phase = 0;

  PauliString() = default;
  explicit PauliString(int n_qubits) : n(n_qubits) {}

  /// Accepts an optional sign prefix ("+", "-", "i", "-i", "+i") before the
  /// letters, e.g. "-iXZ" or "ZZI".
  static PauliString parse(std::string_view text);
  static PauliString single(int n, int q, char letter);

  char letter(int q) const;
  void set(int q, char letter);
  std::string word() const;
  std::string str() const;  // with phase prefix
  int weight() const;
  bool is_identity() const { return x == 0 && z == 0; }
  bool is_diagonal() const { return x == 0; }
  bool commutes(const PauliString &o) const;
  cplx phase_value() const;

  PauliString operator*(const PauliString &o) const;
  bool same_word(const PauliString &o) const { return n == o.n && x == o.x && z == o.z; }
  bool operator==(const PauliString &o) const { return same_word(o) && ((phase - o.phase) % 4 + 4) % 4 == 0; }

  /// P|j> = amp(j) |j ^ flip_mask()> over basis indices.
  std::uint64_t flip_mask() const;
  cplx amplitude(std::uint64_t j) const;
  PauliString tensor(const PauliString &o) const;
};

/// Hermitian operator: real coefficients on phase-free Pauli words.
struct OperatorSum {
  struct Term {
    double c;
    PauliString p;
  };
  int n = 0;
  std::vector<Term> terms;

  OperatorSum() = default;
  explicit OperatorSum(int n_qubits) : n(n_qubits) {}

  /// Adds c*p; a phase of +-1 on p is absorbed, a phase of +-i is rejected.
  OperatorSum &add(double c, const PauliString &p);
  OperatorSum &add(double c, std::string_view word) { return add(c, PauliString::parse(word)); }
  OperatorSum &add_identity(double c);

  /// Combines equal words in first-occurrence order and drops |c| <= tol.
  OperatorSum &merge(double tol = 0.0);
  OperatorSum merged(double tol = 0.0) const;
  std::size_t cardinality() const;
  bool is_diagonal() const;
  double identity_coefficient() const;
  double coefficient_l1() const;

  OperatorSum operator+(const OperatorSum &o) const;
  OperatorSum operator-(const OperatorSum &o) const;
  OperatorSum operator*(double s) const;
  OperatorSum &operator+=(const OperatorSum &o);
  /// Product of Hermitian sums is Hermitian only if they commute; the
  /// imaginary part is checked against tol.
  OperatorSum multiply(const OperatorSum &o, double tol = 1e-12) const;
  OperatorSum tensor(const OperatorSum &o) const;
  /// Embeds into a register of n_total qubits starting at `offset`.
  OperatorSum embed(int n_total, int offset) const;
};

OperatorSum operator*(double s, const OperatorSum &op);

/// Complex-coefficient Pauli expansion, used for building non-Hermitian
/// pieces (transition operators, gate blocks) before taking Hermitian parts.
struct PauliSum {
  int n = 0;
  std::vector<std::pair<cplx, PauliString>> terms;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n(n_qubits) {}
  static PauliSum identity(int n);
  static PauliSum from(const OperatorSum &op);
  /// Pauli expansion of a dense 2^k x 2^k matrix.
  static PauliSum from_matrix(const Matrix &m, double tol = 1e-14);
  /// |b><a| on one qubit, e.g. ket=1, bra=0 gives (X - iY)/2.
  static PauliSum ket_bra(int n, int q, int ket, int bra);

  PauliSum &add(cplx c, const PauliString &p);
  PauliSum &merge(double tol = 1e-15);
  PauliSum operator*(const PauliSum &o) const;
  PauliSum operator+(const PauliSum &o) const;
  PauliSum operator*(cplx s) const;
  PauliSum tensor(const PauliSum &o) const;
  PauliSum adjoint() const;
  /// Hermitian reading; throws NotHermitian if any imaginary part exceeds tol.
  OperatorSum hermitian(double tol = 1e-10) const;
};

struct StateVector {
  int n = 0;
  Vector amp;

  StateVector() = default;
  StateVector(int n_qubits, Vector a) : n(n_qubits), amp(std::move(a)) {}
  static StateVector basis(int n, std::uint64_t index);
  static StateVector zeros(int n) { return basis(n, 0); }
  static StateVector plus(int n);
  double norm() const { return amp.norm(); }
  double probability(std::uint64_t index) const { return std::norm(amp[static_cast<Eigen::Index>(index)]); }
};

struct CliffordGate {
  enum class Kind { H, P, CN };
  Kind kind;
  int a;
  int b = -1;  // CN target
};

struct CliffordCircuit {
  int n = 0;
  std::vector<CliffordGate> gates;
  CliffordCircuit &h(int q) { gates.push_back({CliffordGate::Kind::H, q}); return *this; }
  CliffordCircuit &p(int q) { gates.push_back({CliffordGate::Kind::P, q}); return *this; }
  CliffordCircuit &cn(int c, int t) { gates.push_back({CliffordGate::Kind::CN, c, t}); return *this; }
};

struct Spectrum {
  RVector values;  // ascending
  Matrix vectors;  // columns
};

struct GroundResult {
  double energy = 0.0;
  StateVector state;
  double gap = 0.0;         // first distinct level minus energy
  int degeneracy = 1;       // multiplicity of the ground level
  bool degenerate = false;  // the "gap 0" flag
};

enum class EvolveMode { Quantum, Stochastic };

inline constexpr double kDegeneracyTol = 1e-10;

Matrix pauli_matrix(const PauliString &p);
Matrix realize_dense(const OperatorSum &op, int limit = kDenseLimit);
Vector apply(const OperatorSum &op, const Vector &psi);
double expectation(const OperatorSum &op, const StateVector &psi);
cplx expectation(const Matrix &m, const Vector &psi);

Spectrum eigh(const Matrix &h);
RVector eigenvalues(const Matrix &h);
GroundResult ground(const OperatorSum &op);
GroundResult ground(const Matrix &h, int n);
double operator_norm(const Matrix &m);
double operator_norm(const OperatorSum &op);

/// exp(s * H) for Hermitian H and complex scalar s.
Matrix expm_hermitian(const Matrix &h, cplx s);
/// General dense exponential exp(m).
Matrix expm(const Matrix &m);

PauliString clifford_conjugate(const PauliString &p, const CliffordGate &g);
OperatorSum clifford_conjugate(const OperatorSum &op, const CliffordCircuit &c);
Matrix clifford_matrix(const CliffordCircuit &c);

StateVector evolve(const OperatorSum &op, double t, const StateVector &psi, EvolveMode mode);
/// Dense-generator variant; stochastic mode expects column sums zero.
StateVector evolve(const Matrix &h, double t, const StateVector &psi, EvolveMode mode);
/// Converts a row-sum-zero generator to the column-sum-zero convention.
Matrix row_to_column_generator(const Matrix &h);
bool is_column_stochastic_generator(const Matrix &h, double tol = 1e-10);

StateVector trotter_evolve(const OperatorSum &a, const OperatorSum &b, double t, int steps,
                           const StateVector &psi);
bool is_stoquastic(const OperatorSum &op);

std::string to_text(const OperatorSum &op);
OperatorSum from_text(const std::string &text);
std::string to_json(const OperatorSum &op);
OperatorSum operator_from_json(const std::string &text);

}  // namespace hamlab
