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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hamlab/boolean.hpp"
#include "hamlab/pauli.hpp"
#include "hamlab/rational_lp.hpp"

namespace hamlab {

/// Quadratic 0/1 penalty over n_logical logical variables followed by
/// n_slack slack variables. Assignments are basis indices over all
/// variables (variable 0 most significant), so the slack bits are the low
/// bits: index = (logical << n_slack) | slack.
struct QuadraticPenalty {
  int n_logical = 0;
  int n_slack = 0;
  Rational k0 = 0;
  std::vector<Rational> linear;
  std::map<std::pair<int, int>, Rational> quadratic;  // i < j
  Rational delta = 1;

  QuadraticPenalty() = default;
  QuadraticPenalty(int nl, int ns) : n_logical(nl), n_slack(ns), linear(static_cast<std::size_t>(nl + ns)) {}

  int n_total() const { return n_logical + n_slack; }
  void add_quadratic(int i, int j, const Rational &c);
  Rational quadratic_coefficient(int i, int j) const;
  Rational energy(std::uint64_t assignment) const;
  Rational min_over_slack(std::uint64_t logical) const;
  /// Logical strings whose minimized energy is zero.
  std::set<std::uint64_t> kernel() const;
  PseudoBooleanPoly to_poly() const;
  OperatorSum to_operator() const;
};

struct TargetKernel {
  int n_logical = 0;
  std::set<std::uint64_t> accepted;
  Rational delta = 1;
};

QuadraticPenalty and_gadget(const Rational &delta);
QuadraticPenalty and_gadget(double delta);
QuadraticPenalty copy_gadget();

enum class CubicVariant { A, B };
/// Three logical variables and one slack; min over the slack equals
/// -x1 x2 x3.
QuadraticPenalty cubic_product_gadget(CubicVariant variant);

struct XorChain {
  int k = 0;
  QuadraticPenalty penalty;       // logical s_1..s_k, then slack
  std::vector<int> auxiliaries;   // variable indices of y_1..y_{k-3}
  std::vector<int> mediators;     // one per XOR block
  int output = 0;                 // s_k, forced to the parity of s_1..s_{k-1}
};

/// 2-body network whose kernel is the even-parity strings of s_1..s_k.
XorChain xor_chain(int k, const Rational &delta = 1);

struct SynthesisResult {
  bool feasible = false;
  QuadraticPenalty penalty;
  /// One entry per pattern of minimizing slack values on accepted strings;
  /// each LP is refuted by its Farkas multipliers.
  struct PatternRefutation {
    std::vector<std::uint64_t> slack_choice;
    LinearSystem system;
    FarkasCertificate certificate;
  };
  std::vector<PatternRefutation> refutations;
  std::size_t patterns_tried = 0;
};

SynthesisResult synthesize_penalty(const TargetKernel &target, int n_slack);
/// Exhaustively checks accepted -> 0 and rejected -> >= delta.
bool verify_penalty(const QuadraticPenalty &p, const TargetKernel &target);

TargetKernel and_kernel();
TargetKernel or_kernel();
TargetKernel xor_kernel();
/// Complements every bit of every accepted string (global X conjugation).
TargetKernel complement(const TargetKernel &t);

std::string to_json(const QuadraticPenalty &p);
QuadraticPenalty penalty_from_json(const std::string &text);
std::string to_json(const TargetKernel &t);
TargetKernel kernel_from_json(const std::string &text);

}  // namespace hamlab
