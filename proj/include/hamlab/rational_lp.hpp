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

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hamlab {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational &r);
Rational parse_rational(const std::string &s);
double to_double(const Rational &r);

/// Linear system over free variables:
///   eq_rows . x  = eq_rhs
///   ge_rows . x >= ge_rhs
struct LinearSystem {
  int num_vars = 0;
  std::vector<std::vector<Rational>> eq_rows;
  std::vector<Rational> eq_rhs;
  std::vector<std::vector<Rational>> ge_rows;
  std::vector<Rational> ge_rhs;
};

/// Farkas multipliers proving infeasibility: y_ge >= 0,
/// eq^T y_eq + ge^T y_ge = 0 and eq_rhs.y_eq + ge_rhs.y_ge > 0.
struct FarkasCertificate {
  std::vector<Rational> y_eq;
  std::vector<Rational> y_ge;
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> x;
  FarkasCertificate certificate;
};

/// Exact two-phase simplex (phase 1 only) with Bland's rule.
FeasibilityResult solve_feasibility(const LinearSystem &sys);
bool satisfies(const LinearSystem &sys, const std::vector<Rational> &x);
bool verify_certificate(const LinearSystem &sys, const FarkasCertificate &cert);

}  // namespace hamlab
