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

#include "hamlab/boolean.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hamlab {

namespace {

std::vector<int> canonical_key(std::vector<int> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

void check_vars(int n, const std::vector<int> &vars) {
  for (int v : vars) {
    if (v < 0 || v >= n) throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(v));
  }
}

// Calls fn(subset) for every subset of `vars`.
template <class Fn>
void for_subsets(const std::vector<int> &vars, Fn fn) {
  std::size_t k = vars.size();
  std::vector<int> sub;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    sub.clear();
    for (std::size_t i = 0; i < k; ++i) {
      if ((m >> i) & 1U) sub.push_back(vars[i]);
    }
    fn(sub);
  }
}

}  // namespace

// ---------------------------------------------------------------- polynomials

PseudoBooleanPoly PseudoBooleanPoly::constant(int n, double c) {
  PseudoBooleanPoly p(n);
  p.add(c, {});
  return p;
}

PseudoBooleanPoly PseudoBooleanPoly::variable(int n, int i) {
  PseudoBooleanPoly p(n);
  p.add(1.0, {i});
  return p;
}

PseudoBooleanPoly &PseudoBooleanPoly::add(double c, std::vector<int> vars) {
  check_vars(n, vars);
  auto key = canonical_key(std::move(vars));
  double &slot = coeffs[key];
  slot += c;
  if (slot == 0.0) coeffs.erase(key);
  return *this;
}

double PseudoBooleanPoly::evaluate(std::uint64_t x) const {
  double s = 0;
  for (const auto &[vars, c] : coeffs) {
    bool on = std::all_of(vars.begin(), vars.end(), [&](int i) { return var_bit(x, n, i) == 1; });
    if (on) s += c;
  }
  return s;
}

double PseudoBooleanPoly::coefficient(const std::vector<int> &vars) const {
  auto it = coeffs.find(canonical_key(vars));
  return it == coeffs.end() ? 0.0 : it->second;
}

int PseudoBooleanPoly::degree() const {
  int d = 0;
  for (const auto &kv : coeffs) d = std::max(d, static_cast<int>(kv.first.size()));
  return d;
}

void PseudoBooleanPoly::prune(double tol) {
  std::erase_if(coeffs, [tol](const auto &kv) { return std::abs(kv.second) <= tol; });
}

PseudoBooleanPoly PseudoBooleanPoly::operator+(const PseudoBooleanPoly &o) const {
  PseudoBooleanPoly r(std::max(n, o.n));
  for (const auto &[v, c] : coeffs) r.add(c, v);
  for (const auto &[v, c] : o.coeffs) r.add(c, v);
  return r;
}

PseudoBooleanPoly PseudoBooleanPoly::operator-(const PseudoBooleanPoly &o) const { return *this + o * -1.0; }

PseudoBooleanPoly PseudoBooleanPoly::operator*(const PseudoBooleanPoly &o) const {
  PseudoBooleanPoly r(std::max(n, o.n));
  for (const auto &[va, ca] : coeffs) {
    for (const auto &[vb, cb] : o.coeffs) {
      std::vector<int> u = va;
      u.insert(u.end(), vb.begin(), vb.end());
      r.add(ca * cb, u);
    }
  }
  return r;
}

PseudoBooleanPoly PseudoBooleanPoly::operator*(double s) const {
  PseudoBooleanPoly r(n);
  for (const auto &[v, c] : coeffs) r.add(c * s, v);
  return r;
}

SpinPoly &SpinPoly::add(double c, std::vector<int> vars) {
  check_vars(n, vars);
  // s_i^2 = 1: repeated indices cancel in pairs.
  std::sort(vars.begin(), vars.end());
  std::vector<int> key;
  for (std::size_t i = 0; i < vars.size();) {
    std::size_t j = i;
    while (j < vars.size() && vars[j] == vars[i]) ++j;
    if ((j - i) % 2 == 1) key.push_back(vars[i]);
    i = j;
  }
  double &slot = coeffs[key];
  slot += c;
  if (slot == 0.0) coeffs.erase(key);
  return *this;
}

double SpinPoly::evaluate_spins(const std::vector<int> &s) const {
  double total = 0;
  for (const auto &[vars, c] : coeffs) {
    double t = c;
    for (int i : vars) t *= s[static_cast<std::size_t>(i)];
    total += t;
  }
  return total;
}

double SpinPoly::evaluate(std::uint64_t x) const {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = 1 - 2 * var_bit(x, n, i);
  return evaluate_spins(s);
}

double SpinPoly::coefficient(const std::vector<int> &vars) const {
  auto it = coeffs.find(canonical_key(vars));
  return it == coeffs.end() ? 0.0 : it->second;
}

void SpinPoly::prune(double tol) {
  std::erase_if(coeffs, [tol](const auto &kv) { return std::abs(kv.second) <= tol; });
}

PseudoBooleanPoly canonical_expand(int n, const std::vector<double> &table) {
  if (n < 0 || n > 20) throw Error(ErrorKind::TooLarge, "canonical expansion limited to 20 variables");
  std::size_t dim = std::size_t{1} << n;
  if (table.size() != dim) {
    throw Error(ErrorKind::IncompleteTable,
                "expected " + std::to_string(dim) + " entries, got " + std::to_string(table.size()));
  }
  // Moebius transform over the subset lattice of basis-index bits.
  std::vector<double> a = table;
  for (int b = 0; b < n; ++b) {
    std::size_t bit = std::size_t{1} << b;
    for (std::size_t m = 0; m < dim; ++m) {
      if (m & bit) a[m] -= a[m ^ bit];
    }
  }
  double scale = 0;
  for (double v : table) scale = std::max(scale, std::abs(v));
  PseudoBooleanPoly p(n);
  for (std::size_t m = 0; m < dim; ++m) {
    if (std::abs(a[m]) <= 1e-13 * std::max(1.0, scale)) continue;
    std::vector<int> vars;
    for (int i = 0; i < n; ++i) {
      if (var_bit(m, n, i)) vars.push_back(i);
    }
    p.add(a[m], vars);
  }
  return p;
}

SpinPoly to_spin(const PseudoBooleanPoly &f) {
  // x_i = (1 - s_i)/2
  SpinPoly s(f.n);
  for (const auto &[vars, c] : f.coeffs) {
    double scale = c / static_cast<double>(std::uint64_t{1} << vars.size());
    for_subsets(vars, [&](const std::vector<int> &sub) { s.add(sub.size() % 2 ? -scale : scale, sub); });
  }
  return s;
}

PseudoBooleanPoly to_pseudo(const SpinPoly &s) {
  // s_i = 1 - 2 x_i
  PseudoBooleanPoly f(s.n);
  for (const auto &[vars, c] : s.coeffs) {
    for_subsets(vars, [&](const std::vector<int> &sub) {
      f.add(c * std::pow(-2.0, static_cast<double>(sub.size())), sub);
    });
  }
  return f;
}

OperatorSum spin_to_operator(const SpinPoly &s) {
  OperatorSum op(s.n);
  for (const auto &[vars, c] : s.coeffs) {
    PauliString p(s.n);
    for (int i : vars) p.set(i, 'Z');
    op.add(c, p);
  }
  return op.merge();
}

OperatorSum pseudo_to_operator(const PseudoBooleanPoly &f) {
  // Each x_i becomes P1 = (1 - Z_i)/2, so monomials match the spin expansion.
  OperatorSum op = spin_to_operator(to_spin(f));
  op.n = f.n;
  return op.merge(1e-15);
}

OperatorSum projector_product(int n, const std::vector<std::pair<int, int>> &fixed) {
  PseudoBooleanPoly p = PseudoBooleanPoly::constant(n, 1.0);
  for (auto [v, bit] : fixed) {
    PseudoBooleanPoly lit(n);
    if (bit) {
      lit.add(1.0, {v});
    } else {
      lit.add(1.0, {});
      lit.add(-1.0, {v});
    }
    p = p * lit;
  }
  return pseudo_to_operator(p);
}

// ---------------------------------------------------------------- formulas

bool BooleanFormula::evaluate(std::uint64_t x, int n) const {
  switch (op) {
    case Op::Var: return var_bit(x, n, var) == 1;
    case Op::Const: return value;
    case Op::Not: return !args[0]->evaluate(x, n);
    case Op::And: return args[0]->evaluate(x, n) && args[1]->evaluate(x, n);
    case Op::Or: return args[0]->evaluate(x, n) || args[1]->evaluate(x, n);
    case Op::Xor: return args[0]->evaluate(x, n) != args[1]->evaluate(x, n);
  }
  return false;
}

int BooleanFormula::max_var() const {
  int m = op == Op::Var ? var : -1;
  for (const auto &a : args) m = std::max(m, a->max_var());
  return m;
}

namespace {

Formula make(BooleanFormula::Op op, std::vector<Formula> args) {
  auto f = std::make_shared<BooleanFormula>();
  f->op = op;
  f->args = std::move(args);
  return f;
}

}  // namespace

Formula f_var(int i) {
  auto f = std::make_shared<BooleanFormula>();
  f->op = BooleanFormula::Op::Var;
  f->var = i;
  return f;
}

Formula f_const(bool v) {
  auto f = std::make_shared<BooleanFormula>();
  f->op = BooleanFormula::Op::Const;
  f->value = v;
  return f;
}

Formula f_not(Formula a) { return make(BooleanFormula::Op::Not, {std::move(a)}); }
Formula f_and(Formula a, Formula b) { return make(BooleanFormula::Op::And, {std::move(a), std::move(b)}); }
Formula f_or(Formula a, Formula b) { return make(BooleanFormula::Op::Or, {std::move(a), std::move(b)}); }
Formula f_xor(Formula a, Formula b) { return make(BooleanFormula::Op::Xor, {std::move(a), std::move(b)}); }

Formula push_negations(const Formula &f) {
  using Op = BooleanFormula::Op;
  switch (f->op) {
    case Op::Var:
    case Op::Const:
      return f;
    case Op::And: return f_and(push_negations(f->args[0]), push_negations(f->args[1]));
    case Op::Or: return f_or(push_negations(f->args[0]), push_negations(f->args[1]));
    case Op::Xor: return f_xor(push_negations(f->args[0]), push_negations(f->args[1]));
    case Op::Not: {
      const Formula &a = f->args[0];
      switch (a->op) {
        case Op::Var: return f;
        case Op::Const: return f_const(!a->value);
        case Op::Not: return push_negations(a->args[0]);
        case Op::And: return f_or(push_negations(f_not(a->args[0])), push_negations(f_not(a->args[1])));
        case Op::Or: return f_and(push_negations(f_not(a->args[0])), push_negations(f_not(a->args[1])));
        case Op::Xor: return f_xor(push_negations(f_not(a->args[0])), push_negations(a->args[1]));
      }
    }
  }
  return f;
}

namespace {

PseudoBooleanPoly poly_of(const Formula &f, int n) {
  using Op = BooleanFormula::Op;
  switch (f->op) {
    case Op::Var:
      if (f->var < 0 || f->var >= n) throw Error(ErrorKind::IndexOutOfRange, "formula variable");
      return PseudoBooleanPoly::variable(n, f->var);
    case Op::Const: return PseudoBooleanPoly::constant(n, f->value ? 1.0 : 0.0);
    case Op::Not: return PseudoBooleanPoly::constant(n, 1.0) - poly_of(f->args[0], n);
    case Op::And: return poly_of(f->args[0], n) * poly_of(f->args[1], n);
    case Op::Or: return poly_of(f->args[0], n) + poly_of(f->args[1], n);
    case Op::Xor: throw Error(ErrorKind::UnsupportedNode, "XOR has no direct spectrum embedding; rewrite first");
  }
  return PseudoBooleanPoly(n);
}

bool has_xor(const Formula &f) {
  if (f->op == BooleanFormula::Op::Xor) return true;
  return std::any_of(f->args.begin(), f->args.end(), has_xor);
}

}  // namespace

PseudoBooleanPoly formula_polynomial(const Formula &g, int n) { return poly_of(push_negations(g), n); }

OperatorSum embed_formula(const Formula &g, int n) { return pseudo_to_operator(formula_polynomial(g, n)); }

OperatorSum kernel_embed(const Formula &g, int n) {
  if (has_xor(g)) throw Error(ErrorKind::UnsupportedNode, "XOR has no direct embedding; rewrite first");
  if (n > 20) throw Error(ErrorKind::TooLarge, "kernel embedding enumerates 2^n assignments");
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = g->evaluate(x, n) ? 0.0 : 1.0;
  return pseudo_to_operator(canonical_expand(n, table));
}

// ---------------------------------------------------------------- CNF

int CnfInstance::k_max() const {
  std::size_t k = 0;
  for (const auto &c : clauses) k = std::max(k, c.size());
  return static_cast<int>(k);
}

CnfInstance parse_dimacs(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  CnfInstance inst;
  bool header = false;
  long long declared = 0;
  std::vector<Literal> pending;
  int lineno = 0;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok[0] == 'c') continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      long long n = -1, m = -1;
      if (header || !(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) {
        throw Error(ErrorKind::MalformedHeader, where() + "expected 'p cnf <vars> <clauses>'");
      }
      inst.n = static_cast<int>(n);
      declared = m;
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorKind::MalformedHeader, where() + "clause before 'p cnf' header");
    ls.clear();
    ls.str(line);
    long long v = 0;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw Error(ErrorKind::ParseError, where() + "bad literal '" + tok + "'");
      }
      if (v == 0) {
        inst.clauses.push_back(pending);
        pending.clear();
        continue;
      }
      long long var = std::llabs(v);
      if (var > inst.n) {
        throw Error(ErrorKind::VariableOutOfRange, where() + "variable " + std::to_string(var) + " exceeds " +
                                                       std::to_string(inst.n));
      }
      int idx = static_cast<int>(var - 1);
      for (const auto &l : pending) {
        if (l.var == idx) throw Error(ErrorKind::ParseError, where() + "clause repeats variable " + std::to_string(var));
      }
      pending.push_back({idx, v > 0});
    }
  }
  if (!pending.empty()) throw Error(ErrorKind::UnterminatedClause, "final clause is missing its terminating 0");
  if (!header) throw Error(ErrorKind::EmptyInstance, "no 'p cnf' header found");
  if (static_cast<long long>(inst.clauses.size()) != declared) {
    throw Error(ErrorKind::MalformedHeader, "header declares " + std::to_string(declared) + " clauses, found " +
                                                std::to_string(inst.clauses.size()));
  }
  return inst;
}

std::string to_dimacs(const CnfInstance &inst) {
  std::ostringstream os;
  os << "p cnf " << inst.n << ' ' << inst.clauses.size() << '\n';
  for (const auto &c : inst.clauses) {
    for (const auto &l : c) os << (l.positive ? l.var + 1 : -(l.var + 1)) << ' ';
    os << "0\n";
  }
  return os.str();
}

OperatorSum cnf_to_hamiltonian(const CnfInstance &inst) {
  OperatorSum h(inst.n);
  for (const auto &c : inst.clauses) {
    // The clause is violated when every literal is false.
    std::vector<std::pair<int, int>> fixed;
    for (const auto &l : c) fixed.emplace_back(l.var, l.positive ? 0 : 1);
    h += projector_product(inst.n, fixed);
  }
  return h.merge(1e-15);
}

int violated_clauses(const CnfInstance &inst, std::uint64_t x) {
  int v = 0;
  for (const auto &c : inst.clauses) {
    bool sat = std::any_of(c.begin(), c.end(),
                           [&](const Literal &l) { return var_bit(x, inst.n, l.var) == (l.positive ? 1 : 0); });
    if (!sat) ++v;
  }
  return v;
}

std::vector<std::uint64_t> violation_histogram(const CnfInstance &inst) {
  if (inst.n > 24) throw Error(ErrorKind::TooManyVariables, "enumeration limited to 24 variables");
  std::size_t dim = std::size_t{1} << inst.n;
  std::vector<std::uint16_t> count(dim, 0);
  std::uint64_t all = dim - 1;
  // Each clause is violated on a subcube: fixed bits pinned, the rest free.
  for (const auto &c : inst.clauses) {
    std::uint64_t fixed_mask = 0, fixed_val = 0;
    for (const auto &l : c) {
      std::uint64_t b = qubit_bit(inst.n, l.var);
      fixed_mask |= b;
      if (!l.positive) fixed_val |= b;
    }
    std::uint64_t free = all & ~fixed_mask;
    std::uint64_t s = 0;
    while (true) {
      ++count[fixed_val | s];
      if (s == free) break;
      s = (s - free) & free;
    }
  }
  std::vector<std::uint64_t> hist(inst.clauses.size() + 1, 0);
  for (auto v : count) ++hist[v];
  return hist;
}

CnfInstance random_ksat(int n, int m, int k, std::mt19937_64 &rng) {
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidArgument, "need 1 <= k <= n");
  CnfInstance inst;
  inst.n = n;
  std::set<std::vector<std::pair<int, bool>>> seen;
  std::vector<int> idx(static_cast<std::size_t>(n));
  double space = std::pow(2.0, k);
  for (int i = k; i > 0; --i) space *= static_cast<double>(n - k + i) / i;
  bool unique = m <= space;
  while (static_cast<int>(inst.clauses.size()) < m) {
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::vector<std::pair<int, bool>> key;
    for (int j = 0; j < k; ++j) {
      std::uniform_int_distribution<int> pick(j, n - 1);
      std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(pick(rng))]);
      key.emplace_back(idx[static_cast<std::size_t>(j)], (rng() & 1U) != 0);
    }
    std::vector<std::pair<int, bool>> sorted = key;
    std::sort(sorted.begin(), sorted.end());
    if (unique && !seen.insert(sorted).second) continue;
    std::vector<Literal> clause;
    for (auto [v, pos] : key) clause.push_back({v, pos});
    inst.clauses.push_back(std::move(clause));
  }
  return inst;
}

SpinPoly number_partition(const std::vector<long long> &values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "number partition needs at least one value");
  int n = static_cast<int>(values.size());
  SpinPoly s(n);
  for (int i = 0; i < n; ++i) {
    double vi = static_cast<double>(values[static_cast<std::size_t>(i)]);
    s.add(vi * vi, {});
    for (int j = i + 1; j < n; ++j) s.add(2.0 * vi * static_cast<double>(values[static_cast<std::size_t>(j)]), {i, j});
  }
  return s;
}

std::pair<double, std::uint64_t> spin_minimum(const SpinPoly &s) {
  if (s.n > 24) throw Error(ErrorKind::TooManyVariables, "brute force limited to 24 spins");
  double best = INFINITY;
  std::uint64_t arg = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << s.n); ++x) {
    double v = s.evaluate(x);
    if (v < best) {
      best = v;
      arg = x;
    }
  }
  return {best, arg};
}

// ---------------------------------------------------------------- JSON

namespace {

template <class Poly>
std::string poly_json(const Poly &p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["coeffs"] = nlohmann::json::array();
  for (const auto &[vars, c] : p.coeffs) j["coeffs"].push_back({{"vars", vars}, {"c", c}});
  return j.dump();
}

template <class Poly>
Poly poly_from_json(const std::string &text) {
  try {
    auto j = nlohmann::json::parse(text);
    Poly p(j.at("n").get<int>());
    for (const auto &e : j.at("coeffs")) p.add(e.at("c").get<double>(), e.at("vars").get<std::vector<int>>());
    return p;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Formula formula_node(const nlohmann::json &j) {
  std::string op = j.at("op").get<std::string>();
  auto arg = [&](std::size_t i) { return formula_node(j.at("args").at(i)); };
  if (op == "var") return f_var(j.at("i").get<int>());
  if (op == "const") return f_const(j.at("value").get<int>() != 0);
  if (op == "not") return f_not(arg(0));
  if (op == "and" || op == "or" || op == "xor") {
    const auto &args = j.at("args");
    if (args.size() < 2) throw Error(ErrorKind::ParseError, op + " needs two or more args");
    Formula f = formula_node(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) {
      Formula b = formula_node(args[i]);
      f = op == "and" ? f_and(f, b) : op == "or" ? f_or(f, b) : f_xor(f, b);
    }
    return f;
  }
  throw Error(ErrorKind::ParseError, "unknown formula op '" + op + "'");
}

}  // namespace

std::string to_json(const PseudoBooleanPoly &f) { return poly_json(f); }
PseudoBooleanPoly pseudo_from_json(const std::string &text) { return poly_from_json<PseudoBooleanPoly>(text); }
std::string to_json(const SpinPoly &s) { return poly_json(s); }
SpinPoly spin_from_json(const std::string &text) { return poly_from_json<SpinPoly>(text); }

Formula formula_from_json(const std::string &text) {
  try {
    return formula_node(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace hamlab
