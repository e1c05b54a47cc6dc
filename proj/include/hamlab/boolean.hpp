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
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hamlab/pauli.hpp"

namespace hamlab {

/// Value of variable i in assignment x, with x read as a basis index
/// (variable 0 is the most significant bit).
inline int var_bit(std::uint64_t x, int n, int i) { return static_cast<int>((x >> (n - 1 - i)) & 1U); }

/// Multilinear polynomial over 0/1 variables. Keys are sorted index tuples;
/// the empty key is the constant term.
struct PseudoBooleanPoly {
  int n = 0;
  std::map<std::vector<int>, double> coeffs;

  PseudoBooleanPoly() = default;
  explicit PseudoBooleanPoly(int n_vars) : n(n_vars) {}
  static PseudoBooleanPoly constant(int n, double c);
  static PseudoBooleanPoly variable(int n, int i);

  /// Adds c * prod_{i in vars} x_i; repeated indices collapse (x^2 = x).
  PseudoBooleanPoly &add(double c, std::vector<int> vars);
  double evaluate(std::uint64_t x) const;
  double coefficient(const std::vector<int> &vars) const;
  int degree() const;
  void prune(double tol = 0.0);

  PseudoBooleanPoly operator+(const PseudoBooleanPoly &o) const;
  PseudoBooleanPoly operator-(const PseudoBooleanPoly &o) const;
  PseudoBooleanPoly operator*(const PseudoBooleanPoly &o) const;
  PseudoBooleanPoly operator*(double s) const;
};

/// Polynomial over spins s_i = 1 - 2 x_i.
struct SpinPoly {
  int n = 0;
  std::map<std::vector<int>, double> coeffs;

  SpinPoly() = default;
  explicit SpinPoly(int n_vars) : n(n_vars) {}
  SpinPoly &add(double c, std::vector<int> vars);
  double evaluate_spins(const std::vector<int> &s) const;
  /// Evaluates at the spins induced by the 0/1 assignment x.
  double evaluate(std::uint64_t x) const;
  double coefficient(const std::vector<int> &vars) const;
  void prune(double tol = 0.0);
};

struct BooleanFormula {
  enum class Op { Var, Const, Not, And, Or, Xor };
  Op op = Op::Const;
  int var = -1;
  bool value = false;
  std::vector<std::shared_ptr<const BooleanFormula>> args;

  bool evaluate(std::uint64_t x, int n) const;
  int max_var() const;
};
using Formula = std::shared_ptr<const BooleanFormula>;

Formula f_var(int i);
Formula f_const(bool v);
Formula f_not(Formula a);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_xor(Formula a, Formula b);
/// Rewrites negations down to literals (De Morgan); XOR nodes are kept.
Formula push_negations(const Formula &f);

struct Literal {
  int var;        // 0-based
  bool positive;  // false for a negated literal
};

struct CnfInstance {
  int n = 0;
  std::vector<std::vector<Literal>> clauses;
  int k_max() const;
};

PseudoBooleanPoly canonical_expand(int n, const std::vector<double> &table);
PseudoBooleanPoly to_pseudo(const SpinPoly &s);
SpinPoly to_spin(const PseudoBooleanPoly &f);
inline PseudoBooleanPoly from_spin(const SpinPoly &s) { return to_pseudo(s); }

OperatorSum pseudo_to_operator(const PseudoBooleanPoly &f);
OperatorSum spin_to_operator(const SpinPoly &s);
/// Projector onto the basis states matching the given (variable, bit) pairs.
OperatorSum projector_product(int n, const std::vector<std::pair<int, int>> &fixed);

/// Spectrum embedding: AND -> product, OR -> sum, x -> P1, not x -> P0.
PseudoBooleanPoly formula_polynomial(const Formula &g, int n);
OperatorSum embed_formula(const Formula &g, int n);
/// Nonnegative diagonal operator with kernel = satisfying assignments.
OperatorSum kernel_embed(const Formula &g, int n);

CnfInstance parse_dimacs(const std::string &text);
std::string to_dimacs(const CnfInstance &inst);
OperatorSum cnf_to_hamiltonian(const CnfInstance &inst);
int violated_clauses(const CnfInstance &inst, std::uint64_t x);
/// Histogram of violation counts over all 2^n assignments (index = count).
std::vector<std::uint64_t> violation_histogram(const CnfInstance &inst);
/// Random k-SAT: each clause draws k distinct variables and random signs;
/// duplicate clauses are redrawn.
CnfInstance random_ksat(int n, int m, int k, std::mt19937_64 &rng);

SpinPoly number_partition(const std::vector<long long> &values);
/// Brute-force minimum over all 2^n spin assignments (n <= 24).
std::pair<double, std::uint64_t> spin_minimum(const SpinPoly &s);

std::string to_json(const PseudoBooleanPoly &f);
PseudoBooleanPoly pseudo_from_json(const std::string &text);
std::string to_json(const SpinPoly &s);
SpinPoly spin_from_json(const std::string &text);
/// Formula JSON: {"op":"and","args":[...]} / {"op":"var","i":0} / {"op":"const","value":1}.
Formula formula_from_json(const std::string &text);

}  // namespace hamlab
