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

#include "hamlab/reductions.hpp"

#include <algorithm>

#include "json.hpp"

namespace hamlab {

namespace {

int bit_of(std::uint64_t a, int n, int v) { return var_bit(a, n, v); }

}  // namespace

void QuadraticPenalty::add_quadratic(int i, int j, const Rational &c) {
  if (i == j) {
    linear[static_cast<std::size_t>(i)] += c;  // x^2 = x
    return;
  }
  if (i > j) std::swap(i, j);
  quadratic[{i, j}] += c;
}

Rational QuadraticPenalty::quadratic_coefficient(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = quadratic.find({i, j});
  return it == quadratic.end() ? Rational(0) : it->second;
}

Rational QuadraticPenalty::energy(std::uint64_t a) const {
  int n = n_total();
  Rational e = k0;
  for (int i = 0; i < n; ++i) {
    if (bit_of(a, n, i)) e += linear[static_cast<std::size_t>(i)];
  }
  for (const auto &[ij, c] : quadratic) {
    if (bit_of(a, n, ij.first) && bit_of(a, n, ij.second)) e += c;
  }
  return e;
}

Rational QuadraticPenalty::min_over_slack(std::uint64_t logical) const {
  Rational best = energy(logical << n_slack);
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n_slack); ++s) best = std::min(best, energy((logical << n_slack) | s));
  return best;
}

std::set<std::uint64_t> QuadraticPenalty::kernel() const {
  std::set<std::uint64_t> k;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_logical); ++x) {
    if (min_over_slack(x) == 0) k.insert(x);
  }
  return k;
}

PseudoBooleanPoly QuadraticPenalty::to_poly() const {
  PseudoBooleanPoly p(n_total());
  p.add(to_double(k0), {});
  for (int i = 0; i < n_total(); ++i) p.add(to_double(linear[static_cast<std::size_t>(i)]), {i});
  for (const auto &[ij, c] : quadratic) p.add(to_double(c), {ij.first, ij.second});
  return p;
}

OperatorSum QuadraticPenalty::to_operator() const { return pseudo_to_operator(to_poly()); }

QuadraticPenalty and_gadget(const Rational &delta) {
  if (delta <= 0) throw Error(ErrorKind::NonpositiveDelta, "delta must be positive");
  // Variables x1, x2, z.
  QuadraticPenalty p(3, 0);
  p.delta = delta;
  p.linear[2] = 3 * delta;
  p.add_quadratic(0, 1, delta);
  p.add_quadratic(0, 2, -2 * delta);
  p.add_quadratic(1, 2, -2 * delta);
  return p;
}

QuadraticPenalty and_gadget(double delta) {
  if (!(delta > 0)) throw Error(ErrorKind::NonpositiveDelta, "delta must be positive");
  return and_gadget(Rational(delta));
}

QuadraticPenalty copy_gadget() {
  QuadraticPenalty p(3, 0);
  for (int i = 0; i < 3; ++i) p.linear[static_cast<std::size_t>(i)] = 2;
  p.add_quadratic(1, 2, -2);
  p.add_quadratic(0, 1, -2);
  p.add_quadratic(0, 2, -2);
  p.delta = 2;
  return p;
}

QuadraticPenalty cubic_product_gadget(CubicVariant variant) {
  // Variables x1, x2, x3 and slack z (index 3).
  QuadraticPenalty p(3, 1);
  if (variant == CubicVariant::A) {
    // z (2 - x1 - x2 - x3)
    p.linear[3] = 2;
    for (int i = 0; i < 3; ++i) p.add_quadratic(i, 3, -1);
  } else {
    // z (-x1 + x2 + x3) - x1 x2 - x1 x3 + x1
    p.add_quadratic(0, 3, -1);
    p.add_quadratic(1, 3, 1);
    p.add_quadratic(2, 3, 1);
    p.add_quadratic(0, 1, -1);
    p.add_quadratic(0, 2, -1);
    p.linear[0] = 1;
  }
  return p;
}

XorChain xor_chain(int k, const Rational &delta) {
  if (k < 3) throw Error(ErrorKind::KTooSmall, "XOR chain needs k >= 3");
  if (delta <= 0) throw Error(ErrorKind::NonpositiveDelta, "delta must be positive");
  int n_aux = k - 3;
  int n_blocks = k - 2;
  XorChain chain;
  chain.k = k;
  chain.output = k - 1;
  chain.penalty = QuadraticPenalty(k, n_aux + n_blocks);
  chain.penalty.delta = delta;
  for (int j = 0; j < n_aux; ++j) chain.auxiliaries.push_back(k + j);
  for (int b = 0; b < n_blocks; ++b) chain.mediators.push_back(k + n_aux + b);

  // Block a XOR b = c with mediator m: delta * (a + b - c - 2m)^2, which is
  // zero iff m = a AND b and c = a XOR b, and at least delta otherwise.
  auto block = [&](int a, int b, int c, int m) {
    QuadraticPenalty &p = chain.penalty;
    const int v[4] = {a, b, c, m};
    const int w[4] = {1, 1, -1, -2};
    for (int i = 0; i < 4; ++i) {
      p.linear[static_cast<std::size_t>(v[i])] += delta * w[i] * w[i];
      for (int j = i + 1; j < 4; ++j) p.add_quadratic(v[i], v[j], delta * 2 * w[i] * w[j]);
    }
  };
  int prev = 0;  // s_1
  int next_input = 1;
  for (int j = 0; j < n_aux; ++j) {
    block(prev, next_input, chain.auxiliaries[static_cast<std::size_t>(j)], chain.mediators[static_cast<std::size_t>(j)]);
    prev = chain.auxiliaries[static_cast<std::size_t>(j)];
    ++next_input;
  }
  block(prev, next_input, k - 1, chain.mediators.back());
  return chain;
}

namespace {

std::vector<std::pair<int, int>> pair_list(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<Rational> lp_row(std::uint64_t a, int n, const std::vector<std::pair<int, int>> &pairs) {
  std::vector<Rational> row;
  row.reserve(1 + static_cast<std::size_t>(n) + pairs.size());
  row.emplace_back(1);
  for (int i = 0; i < n; ++i) row.emplace_back(bit_of(a, n, i));
  for (auto [i, j] : pairs) row.emplace_back(bit_of(a, n, i) & bit_of(a, n, j));
  return row;
}

}  // namespace

SynthesisResult synthesize_penalty(const TargetKernel &target, int n_slack) {
  int nl = target.n_logical;
  int n = nl + n_slack;
  if (n_slack < 0 || nl < 1) throw Error(ErrorKind::InvalidArgument, "bad kernel size");
  if (n > 5) throw Error(ErrorKind::TooLarge, "synthesis is exhaustive and limited to 5 variables");
  if (target.delta <= 0) throw Error(ErrorKind::NonpositiveDelta, "delta must be positive");
  std::uint64_t nlog = std::uint64_t{1} << nl;
  std::uint64_t nsl = std::uint64_t{1} << n_slack;
  if (target.accepted.empty() || target.accepted.size() >= nlog) {
    throw Error(ErrorKind::InvalidArgument, "accepted set must be a nonempty proper subset");
  }
  for (auto x : target.accepted) {
    if (x >= nlog) throw Error(ErrorKind::IndexOutOfRange, "accepted string out of range");
  }
  auto pairs = pair_list(n);
  std::vector<std::uint64_t> acc(target.accepted.begin(), target.accepted.end());

  LinearSystem base;
  base.num_vars = static_cast<int>(1 + static_cast<std::size_t>(n) + pairs.size());
  for (std::uint64_t x = 0; x < nlog; ++x) {
    if (target.accepted.count(x)) continue;
    for (std::uint64_t s = 0; s < nsl; ++s) {
      base.ge_rows.push_back(lp_row((x << n_slack) | s, n, pairs));
      base.ge_rhs.push_back(target.delta);
    }
  }

  SynthesisResult res;
  std::vector<std::uint64_t> choice(acc.size(), 0);
  while (true) {
    ++res.patterns_tried;
    LinearSystem sys = base;
    for (std::size_t a = 0; a < acc.size(); ++a) {
      for (std::uint64_t s = 0; s < nsl; ++s) {
        auto row = lp_row((acc[a] << n_slack) | s, n, pairs);
        if (s == choice[a]) {
          sys.eq_rows.push_back(row);
          sys.eq_rhs.emplace_back(0);
        } else {
          sys.ge_rows.push_back(row);
          sys.ge_rhs.emplace_back(0);
        }
      }
    }
    FeasibilityResult fr = solve_feasibility(sys);
    if (fr.feasible) {
      QuadraticPenalty p(nl, n_slack);
      p.delta = target.delta;
      p.k0 = fr.x[0];
      for (int i = 0; i < n; ++i) p.linear[static_cast<std::size_t>(i)] = fr.x[1 + static_cast<std::size_t>(i)];
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        const Rational &c = fr.x[1 + static_cast<std::size_t>(n) + q];
        if (c != 0) p.quadratic[pairs[q]] = c;
      }
      if (!verify_penalty(p, target)) throw Error(ErrorKind::InvalidArgument, "LP solution failed verification");
      res.feasible = true;
      res.penalty = p;
      return res;
    }
    if (!verify_certificate(sys, fr.certificate)) {
      throw Error(ErrorKind::InvalidArgument, "Farkas certificate failed verification");
    }
    res.refutations.push_back({choice, std::move(sys), std::move(fr.certificate)});
    // Next pattern (mixed-radix counter).
    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == nsl) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  return res;
}

bool verify_penalty(const QuadraticPenalty &p, const TargetKernel &target) {
  if (p.n_logical != target.n_logical) return false;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << p.n_logical); ++x) {
    Rational e = p.min_over_slack(x);
    if (target.accepted.count(x) ? e != 0 : e < target.delta) return false;
  }
  return true;
}

TargetKernel and_kernel() {
  TargetKernel t;
  t.n_logical = 3;
  for (std::uint64_t x = 0; x < 8; ++x) {
    int a = var_bit(x, 3, 0), b = var_bit(x, 3, 1), z = var_bit(x, 3, 2);
    if (z == (a & b)) t.accepted.insert(x);
  }
  return t;
}

TargetKernel or_kernel() {
  TargetKernel t;
  t.n_logical = 3;
  for (std::uint64_t x = 0; x < 8; ++x) {
    int a = var_bit(x, 3, 0), b = var_bit(x, 3, 1), z = var_bit(x, 3, 2);
    if (z == (a | b)) t.accepted.insert(x);
  }
  return t;
}

TargetKernel xor_kernel() {
  TargetKernel t;
  t.n_logical = 3;
  for (std::uint64_t x = 0; x < 8; ++x) {
    int a = var_bit(x, 3, 0), b = var_bit(x, 3, 1), z = var_bit(x, 3, 2);
    if (z == (a ^ b)) t.accepted.insert(x);
  }
  return t;
}

TargetKernel complement(const TargetKernel &t) {
  TargetKernel c = t;
  c.accepted.clear();
  std::uint64_t all = (std::uint64_t{1} << t.n_logical) - 1;
  for (auto x : t.accepted) c.accepted.insert(x ^ all);
  return c;
}

std::string to_json(const QuadraticPenalty &p) {
  nlohmann::json j;
  j["n_logical"] = p.n_logical;
  j["n_slack"] = p.n_slack;
  j["k0"] = to_string(p.k0);
  j["linear"] = nlohmann::json::array();
  for (const auto &l : p.linear) j["linear"].push_back(to_string(l));
  j["quadratic"] = nlohmann::json::array();
  for (const auto &[ij, c] : p.quadratic) j["quadratic"].push_back({{"i", ij.first}, {"j", ij.second}, {"c", to_string(c)}});
  j["delta"] = to_string(p.delta);
  return j.dump();
}

QuadraticPenalty penalty_from_json(const std::string &text) {
  try {
    auto j = nlohmann::json::parse(text);
    QuadraticPenalty p(j.at("n_logical").get<int>(), j.at("n_slack").get<int>());
    p.k0 = parse_rational(j.at("k0").get<std::string>());
    const auto &lin = j.at("linear");
    if (lin.size() != p.linear.size()) throw Error(ErrorKind::ParseError, "linear length mismatch");
    for (std::size_t i = 0; i < lin.size(); ++i) p.linear[i] = parse_rational(lin[i].get<std::string>());
    for (const auto &q : j.at("quadratic")) {
      p.add_quadratic(q.at("i").get<int>(), q.at("j").get<int>(), parse_rational(q.at("c").get<std::string>()));
    }
    p.delta = parse_rational(j.at("delta").get<std::string>());
    return p;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string to_json(const TargetKernel &t) {
  nlohmann::json j;
  j["n"] = t.n_logical;
  j["accepted"] = nlohmann::json::array();
  for (auto x : t.accepted) {
    std::string s;
    for (int i = 0; i < t.n_logical; ++i) s += var_bit(x, t.n_logical, i) ? '1' : '0';
    j["accepted"].push_back(s);
  }
  j["delta"] = to_string(t.delta);
  return j.dump();
}

TargetKernel kernel_from_json(const std::string &text) {
  try {
    auto j = nlohmann::json::parse(text);
    TargetKernel t;
    t.n_logical = j.at("n").get<int>();
    for (const auto &s : j.at("accepted")) {
      std::string b = s.get<std::string>();
      if (static_cast<int>(b.size()) != t.n_logical) throw Error(ErrorKind::ParseError, "bitstring length");
      std::uint64_t x = 0;
      for (char c : b) {
        if (c != '0' && c != '1') throw Error(ErrorKind::ParseError, "bitstring character");
        x = (x << 1) | static_cast<std::uint64_t>(c == '1');
      }
      t.accepted.insert(x);
    }
    if (j.contains("delta")) t.delta = parse_rational(j.at("delta").get<std::string>());
    return t;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace hamlab
