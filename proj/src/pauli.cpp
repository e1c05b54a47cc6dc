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

#include "hamlab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include <unsupported/Eigen/MatrixFunctions>

#include "json.hpp"

namespace hamlab {

const char *to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotStochasticGenerator: return "NotStochasticGenerator";
    case ErrorKind::InvalidSteps: return "InvalidSteps";
    case ErrorKind::IncompleteTable: return "IncompleteTable";
    case ErrorKind::UnsupportedNode: return "UnsupportedNode";
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::VariableOutOfRange: return "VariableOutOfRange";
    case ErrorKind::UnterminatedClause: return "UnterminatedClause";
    case ErrorKind::EmptyInstance: return "EmptyInstance";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonpositiveDelta: return "NonpositiveDelta";
    case ErrorKind::KTooSmall: return "KTooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ZeroCoupling: return "ZeroCoupling";
    case ErrorKind::ZNearPole: return "ZNearPole";
    case ErrorKind::SingularProjection: return "SingularProjection";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NonDiagonalCost: return "NonDiagonalCost";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::BadBipartition: return "BadBipartition";
    case ErrorKind::DegenerateGround: return "DegenerateGround";
    case ErrorKind::EnergyAboveGap: return "EnergyAboveGap";
    case ErrorKind::CardinalityBlowup: return "CardinalityBlowup";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::DenseLimit: return "DenseLimit";
    case ErrorKind::UnsupportedGate: return "UnsupportedGate";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::ZeroDegreeNode: return "ZeroDegreeNode";
    case ErrorKind::NotLaplacian: return "NotLaplacian";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::NotEigenvector: return "NotEigenvector";
    case ErrorKind::AliasRisk: return "AliasRisk";
    case ErrorKind::TooManyVariables: return "TooManyVariables";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int mod4(int k) { return ((k % 4) + 4) % 4; }

// Qubit-indexed mask to basis-index mask.
std::uint64_t to_index_mask(int n, std::uint64_t m) {
  std::uint64_t out = 0;
  while (m) {
    int q = std::countr_zero(m);
    out |= qubit_bit(n, q);
    m &= m - 1;
  }
  return out;
}

struct WordHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t> &k) const {
    return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
  }
};

void check_dense(int n, int limit) {
  if (n > limit) {
    throw Error(ErrorKind::DimensionTooLarge,
                std::to_string(n) + " qubits exceeds dense limit " + std::to_string(limit));
  }
}

}  // namespace

// ---------------------------------------------------------------- PauliString

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') phase = 2;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    phase = mod4(phase + 1);
    ++i;
  }
  std::string_view letters = text.substr(i);
  if (letters.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw Error(ErrorKind::DimensionTooLarge, "Pauli word longer than 64 letters");
  }
  PauliString p(static_cast<int>(letters.size()));
  p.phase = phase;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    char c = letters[q];
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw Error(ErrorKind::ParseError, "bad Pauli letter '" + std::string(1, c) + "'");
    }
    p.set(static_cast<int>(q), c);
  }
  return p;
}

PauliString PauliString::single(int n, int q, char letter) {
  if (q < 0 || q >= n) throw Error(ErrorKind::IndexOutOfRange, "qubit " + std::to_string(q));
  PauliString p(n);
  p.set(q, letter);
  return p;
}

char PauliString::letter(int q) const {
  bool bx = (x >> q) & 1U, bz = (z >> q) & 1U;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

void PauliString::set(int q, char l) {
  std::uint64_t b = std::uint64_t{1} << q;
  x &= ~b;
  z &= ~b;
  if (l == 'X' || l == 'Y') x |= b;
  if (l == 'Z' || l == 'Y') z |= b;
}

std::string PauliString::word() const {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int q = 0; q < n; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

std::string PauliString::str() const {
  static const char *prefix[4] = {"+", "+i", "-", "-i"};
  return std::string(prefix[mod4(phase)]) + word();
}

int PauliString::weight() const { return std::popcount(x | z); }

bool PauliString::commutes(const PauliString &o) const {
  return std::popcount((x & o.z) ^ (z & o.x)) % 2 == 0;
}

cplx PauliString::phase_value() const { return kIPow[mod4(phase)]; }

PauliString PauliString::operator*(const PauliString &o) const {
  if (n != o.n) throw Error(ErrorKind::DimensionMismatch, "Pauli product of different widths");
  PauliString r(n);
  r.x = x ^ o.x;
  r.z = z ^ o.z;
  int ph = phase + o.phase;
  std::uint64_t active = (x | z) & (o.x | o.z);
  while (active) {
    int q = std::countr_zero(active);
    active &= active - 1;
    int x1 = (x >> q) & 1, z1 = (z >> q) & 1, x2 = (o.x >> q) & 1, z2 = (o.z >> q) & 1;
    if (x1 && z1) {
      ph += z2 - x2;
    } else if (x1) {
      ph += z2 * (2 * x2 - 1);
    } else {
      ph += x2 * (1 - 2 * z2);
    }
  }
  r.phase = mod4(ph);
  return r;
}

std::uint64_t PauliString::flip_mask() const { return to_index_mask(n, x); }

cplx PauliString::amplitude(std::uint64_t j) const {
  int ny = std::popcount(x & z);
  std::uint64_t zm = to_index_mask(n, z);
  int sign = std::popcount(j & zm) & 1;
  return kIPow[mod4(phase + ny + 2 * sign)];
}

PauliString PauliString::tensor(const PauliString &o) const {
  if (n + o.n > kMaxQubits) throw Error(ErrorKind::DimensionTooLarge, "tensor exceeds 64 qubits");
  PauliString r(n + o.n);
  r.x = x | (o.x << n);
  r.z = z | (o.z << n);
  r.phase = mod4(phase + o.phase);
  return r;
}

// ---------------------------------------------------------------- OperatorSum

OperatorSum &OperatorSum::add(double c, const PauliString &p) {
  if (terms.empty() && n == 0) n = p.n;
  if (p.n != n) throw Error(ErrorKind::DimensionMismatch, "term width differs from operator width");
  int ph = mod4(p.phase);
  if (ph % 2 != 0) throw Error(ErrorKind::NotHermitian, "imaginary phase on Pauli term");
  PauliString q = p;
  q.phase = 0;
  terms.push_back({ph == 2 ? -c : c, q});
  return *this;
}

OperatorSum &OperatorSum::add_identity(double c) { return add(c, PauliString(n)); }

OperatorSum &OperatorSum::merge(double tol) {
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::size_t, WordHash> index;
  std::vector<Term> out;
  for (const auto &t : terms) {
    auto key = std::make_pair(t.p.x, t.p.z);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.size());
      out.push_back(t);
    } else {
      out[it->second].c += t.c;
    }
  }
  terms.clear();
  for (auto &t : out) {
    if (std::abs(t.c) > tol) terms.push_back(t);
  }
  return *this;
}

OperatorSum OperatorSum::merged(double tol) const {
  OperatorSum r = *this;
  r.merge(tol);
  return r;
}

std::size_t OperatorSum::cardinality() const { return merged().terms.size(); }

bool OperatorSum::is_diagonal() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term &t) { return t.p.is_diagonal() || t.c == 0.0; });
}

double OperatorSum::identity_coefficient() const {
  double c = 0;
  for (const auto &t : terms) {
    if (t.p.is_identity()) c += t.c;
  }
  return c;
}

double OperatorSum::coefficient_l1() const {
  double s = 0;
  for (const auto &t : merged().terms) s += std::abs(t.c);
  return s;
}

OperatorSum OperatorSum::operator+(const OperatorSum &o) const {
  OperatorSum r = *this;
  r += o;
  return r;
}

OperatorSum &OperatorSum::operator+=(const OperatorSum &o) {
  if (terms.empty() && n == 0) n = o.n;
  if (o.n != n && !o.terms.empty()) throw Error(ErrorKind::DimensionMismatch, "operator widths differ");
  for (const auto &t : o.terms) add(t.c, t.p);
  return merge();
}

OperatorSum OperatorSum::operator-(const OperatorSum &o) const { return *this + o * -1.0; }

OperatorSum OperatorSum::operator*(double s) const {
  OperatorSum r = *this;
  for (auto &t : r.terms) t.c *= s;
  return r;
}

OperatorSum operator*(double s, const OperatorSum &op) { return op * s; }

OperatorSum OperatorSum::multiply(const OperatorSum &o, double tol) const {
  return (PauliSum::from(*this) * PauliSum::from(o)).hermitian(tol);
}

OperatorSum OperatorSum::tensor(const OperatorSum &o) const {
  OperatorSum r(n + o.n);
  for (const auto &a : terms) {
    for (const auto &b : o.terms) r.add(a.c * b.c, a.p.tensor(b.p));
  }
  return r.merge();
}

OperatorSum OperatorSum::embed(int n_total, int offset) const {
  if (offset < 0 || offset + n > n_total) throw Error(ErrorKind::IndexOutOfRange, "embedding out of range");
  OperatorSum r(n_total);
  for (const auto &t : terms) {
    PauliString p(n_total);
    p.x = t.p.x << offset;
    p.z = t.p.z << offset;
    r.add(t.c, p);
  }
  return r;
}

// ---------------------------------------------------------------- PauliSum

PauliSum PauliSum::identity(int n) {
  PauliSum s(n);
  s.add(1.0, PauliString(n));
  return s;
}

PauliSum PauliSum::from(const OperatorSum &op) {
  PauliSum s(op.n);
  for (const auto &t : op.terms) s.add(t.c, t.p);
  return s;
}

PauliSum PauliSum::from_matrix(const Matrix &m, double tol) {
  int k = 0;
  while ((Eigen::Index{1} << k) < m.rows()) ++k;
  if ((Eigen::Index{1} << k) != m.rows() || m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is not 2^k square");
  }
  PauliSum s(k);
  std::uint64_t words = std::uint64_t{1} << (2 * k);
  double dim = static_cast<double>(m.rows());
  for (std::uint64_t w = 0; w < words; ++w) {
    PauliString p(k);
    p.x = w & ((std::uint64_t{1} << k) - 1);
    p.z = w >> k;
    std::uint64_t f = p.flip_mask();
    cplx tr = 0;
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      auto i = static_cast<Eigen::Index>(static_cast<std::uint64_t>(j) ^ f);
      tr += std::conj(p.amplitude(static_cast<std::uint64_t>(j))) * m(i, j);
    }
    tr /= dim;
    if (std::abs(tr) > tol) s.add(tr, p);
  }
  return s;
}

PauliSum PauliSum::ket_bra(int n, int q, int ket, int bra) {
  PauliSum s(n);
  PauliString id(n);
  if (ket == bra) {
    s.add(0.5, id);
    s.add(ket == 0 ? 0.5 : -0.5, PauliString::single(n, q, 'Z'));
  } else {
    s.add(0.5, PauliString::single(n, q, 'X'));
    // |1><0| = (X - iY)/2, |0><1| = (X + iY)/2
    s.add(ket == 1 ? cplx(0, -0.5) : cplx(0, 0.5), PauliString::single(n, q, 'Y'));
  }
  return s;
}

PauliSum &PauliSum::add(cplx c, const PauliString &p) {
  if (terms.empty() && n == 0) n = p.n;
  if (p.n != n) throw Error(ErrorKind::DimensionMismatch, "term width differs");
  PauliString q = p;
  q.phase = 0;
  terms.emplace_back(c * p.phase_value(), q);
  return *this;
}

PauliSum &PauliSum::merge(double tol) {
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::size_t, WordHash> index;
  std::vector<std::pair<cplx, PauliString>> out;
  for (const auto &t : terms) {
    auto key = std::make_pair(t.second.x, t.second.z);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.size());
      out.push_back(t);
    } else {
      out[it->second].first += t.first;
    }
  }
  terms.clear();
  for (auto &t : out) {
    if (std::abs(t.first) > tol) terms.push_back(t);
  }
  return *this;
}

PauliSum PauliSum::operator*(const PauliSum &o) const {
  PauliSum r(n);
  for (const auto &a : terms) {
    for (const auto &b : o.terms) r.add(a.first * b.first, a.second * b.second);
  }
  return r.merge();
}

PauliSum PauliSum::operator+(const PauliSum &o) const {
  PauliSum r = *this;
  if (r.n == 0 && r.terms.empty()) r.n = o.n;
  for (const auto &t : o.terms) r.add(t.first, t.second);
  return r.merge();
}

PauliSum PauliSum::operator*(cplx s) const {
  PauliSum r = *this;
  for (auto &t : r.terms) t.first *= s;
  return r;
}

PauliSum PauliSum::tensor(const PauliSum &o) const {
  PauliSum r(n + o.n);
  for (const auto &a : terms) {
    for (const auto &b : o.terms) r.add(a.first * b.first, a.second.tensor(b.second));
  }
  return r.merge();
}

PauliSum PauliSum::adjoint() const {
  PauliSum r = *this;
  for (auto &t : r.terms) t.first = std::conj(t.first);
  return r;
}

OperatorSum PauliSum::hermitian(double tol) const {
  PauliSum m = *this;
  m.merge();
  OperatorSum op(n);
  for (const auto &t : m.terms) {
    if (std::abs(t.first.imag()) > tol) {
      throw Error(ErrorKind::NotHermitian, "imaginary coefficient on " + t.second.word());
    }
    op.add(t.first.real(), t.second);
  }
  return op;
}

// ---------------------------------------------------------------- states

StateVector StateVector::basis(int n, std::uint64_t index) {
  check_dense(n, kStateLimit);
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return {n, v};
}

StateVector StateVector::plus(int n) {
  check_dense(n, kStateLimit);
  Eigen::Index dim = Eigen::Index{1} << n;
  return {n, Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)))};
}

// ---------------------------------------------------------------- dense

Matrix pauli_matrix(const PauliString &p) {
  check_dense(p.n, kDenseLimit);
  Eigen::Index dim = Eigen::Index{1} << p.n;
  Matrix m = Matrix::Zero(dim, dim);
  std::uint64_t f = p.flip_mask();
  for (Eigen::Index j = 0; j < dim; ++j) {
    auto uj = static_cast<std::uint64_t>(j);
    m(static_cast<Eigen::Index>(uj ^ f), j) = p.amplitude(uj);
  }
  return m;
}

Matrix realize_dense(const OperatorSum &op, int limit) {
  check_dense(op.n, limit);
  Eigen::Index dim = Eigen::Index{1} << op.n;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto &t : op.terms) {
    std::uint64_t f = t.p.flip_mask();
    for (Eigen::Index j = 0; j < dim; ++j) {
      auto uj = static_cast<std::uint64_t>(j);
      m(static_cast<Eigen::Index>(uj ^ f), j) += t.c * t.p.amplitude(uj);
    }
  }
  return m;
}

Vector apply(const OperatorSum &op, const Vector &psi) {
  Eigen::Index dim = Eigen::Index{1} << op.n;
  if (psi.size() != dim) throw Error(ErrorKind::DimensionMismatch, "state size does not match operator");
  Vector out = Vector::Zero(dim);
  for (const auto &t : op.terms) {
    std::uint64_t f = t.p.flip_mask();
    for (Eigen::Index j = 0; j < dim; ++j) {
      auto uj = static_cast<std::uint64_t>(j);
      out[static_cast<Eigen::Index>(uj ^ f)] += t.c * t.p.amplitude(uj) * psi[j];
    }
  }
  return out;
}

double expectation(const OperatorSum &op, const StateVector &psi) {
  if (psi.n != op.n) throw Error(ErrorKind::DimensionMismatch, "state and operator widths differ");
  check_dense(psi.n, kStateLimit);
  return psi.amp.dot(apply(op, psi.amp)).real();
}

cplx expectation(const Matrix &m, const Vector &psi) {
  if (m.cols() != psi.size()) throw Error(ErrorKind::DimensionMismatch, "matrix and state sizes differ");
  return psi.dot(m * psi);
}

Spectrum eigh(const Matrix &h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

RVector eigenvalues(const Matrix &h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

// Fixes the global phase so the largest-magnitude amplitude is real positive.
Vector canonical_phase(Vector v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  cplx a = v[k];
  if (std::abs(a) > 0) v *= std::conj(a) / std::abs(a);
  return v;
}

}  // namespace

GroundResult ground(const Matrix &h, int n) {
  Spectrum s = eigh(h);
  GroundResult r;
  r.energy = s.values[0];
  r.state = StateVector(n, canonical_phase(s.vectors.col(0)));
  r.degeneracy = 1;
  r.gap = 0.0;
  for (Eigen::Index i = 1; i < s.values.size(); ++i) {
    if (s.values[i] > r.energy + kDegeneracyTol) {
      r.gap = s.values[i] - r.energy;
      break;
    }
    ++r.degeneracy;
  }
  r.degenerate = r.degeneracy > 1;
  return r;
}

GroundResult ground(const OperatorSum &op) { return ground(realize_dense(op), op.n); }

double operator_norm(const Matrix &m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

double operator_norm(const OperatorSum &op) {
  if (op.terms.empty()) return 0.0;
  RVector v = eigenvalues(realize_dense(op));
  return std::max(std::abs(v[0]), std::abs(v[v.size() - 1]));
}

Matrix expm_hermitian(const Matrix &h, cplx s) {
  Spectrum sp = eigh(h);
  Vector d(sp.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = std::exp(s * sp.values[i]);
  return sp.vectors * d.asDiagonal() * sp.vectors.adjoint();
}

Matrix expm(const Matrix &m) { return m.exp(); }

// ---------------------------------------------------------------- Clifford

namespace {

PauliString image_x(int n, int q, const CliffordGate &g) {
  PauliString p = PauliString::single(n, q, 'X');
  switch (g.kind) {
    case CliffordGate::Kind::H:
      if (q == g.a) p = PauliString::single(n, q, 'Z');
      break;
    case CliffordGate::Kind::P:
      if (q == g.a) p = PauliString::single(n, q, 'Y');
      break;
    case CliffordGate::Kind::CN:
      if (q == g.a) p.set(g.b, 'X');
      break;
  }
  return p;
}

PauliString image_z(int n, int q, const CliffordGate &g) {
  PauliString p = PauliString::single(n, q, 'Z');
  switch (g.kind) {
    case CliffordGate::Kind::H:
      if (q == g.a) p = PauliString::single(n, q, 'X');
      break;
    case CliffordGate::Kind::P:
      break;
    case CliffordGate::Kind::CN:
      if (q == g.b) p.set(g.a, 'Z');
      break;
  }
  return p;
}

void check_gate(int n, const CliffordGate &g) {
  auto bad = [n](int q) { return q < 0 || q >= n; };
  if (bad(g.a) || (g.kind == CliffordGate::Kind::CN && (bad(g.b) || g.a == g.b))) {
    throw Error(ErrorKind::IndexOutOfRange, "Clifford gate index out of range");
  }
}

}  // namespace

PauliString clifford_conjugate(const PauliString &p, const CliffordGate &g) {
  check_gate(p.n, g);
  // p = i^(phase + #Y) * prod X^x * prod Z^z
  PauliString out(p.n);
  out.phase = mod4(p.phase + std::popcount(p.x & p.z));
  for (int q = 0; q < p.n; ++q) {
    if ((p.x >> q) & 1U) out = out * image_x(p.n, q, g);
  }
  for (int q = 0; q < p.n; ++q) {
    if ((p.z >> q) & 1U) out = out * image_z(p.n, q, g);
  }
  return out;
}

OperatorSum clifford_conjugate(const OperatorSum &op, const CliffordCircuit &c) {
  if (c.n != op.n) throw Error(ErrorKind::DimensionMismatch, "circuit width differs from operator");
  OperatorSum out(op.n);
  for (const auto &t : op.terms) {
    PauliString p = t.p;
    for (const auto &g : c.gates) p = clifford_conjugate(p, g);
    out.add(t.c, p);
  }
  return out;
}

Matrix clifford_matrix(const CliffordCircuit &c) {
  check_dense(c.n, kDenseLimit);
  Eigen::Index dim = Eigen::Index{1} << c.n;
  Matrix u = Matrix::Identity(dim, dim);
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto &g : c.gates) {
    check_gate(c.n, g);
    Matrix gm = Matrix::Zero(dim, dim);
    std::uint64_t ba = qubit_bit(c.n, g.a);
    for (Eigen::Index j = 0; j < dim; ++j) {
      auto uj = static_cast<std::uint64_t>(j);
      bool bit = uj & ba;
      switch (g.kind) {
        case CliffordGate::Kind::H:
          gm(static_cast<Eigen::Index>(uj & ~ba), j) += r;
          gm(static_cast<Eigen::Index>(uj | ba), j) += bit ? -r : r;
          break;
        case CliffordGate::Kind::P:
          gm(j, j) = bit ? cplx(0, 1) : cplx(1, 0);
          break;
        case CliffordGate::Kind::CN: {
          std::uint64_t bb = qubit_bit(c.n, g.b);
          gm(static_cast<Eigen::Index>(bit ? (uj ^ bb) : uj), j) = 1.0;
          break;
        }
      }
    }
    u = gm * u;
  }
  return u;
}

// ---------------------------------------------------------------- evolution

bool is_column_stochastic_generator(const Matrix &h, double tol) {
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    cplx col = 0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      cplx v = h(i, j);
      if (std::abs(v.imag()) > tol) return false;
      if (i != j && v.real() > tol) return false;
      col += v;
    }
    if (std::abs(col) > tol) return false;
  }
  return true;
}

Matrix row_to_column_generator(const Matrix &h) { return h.transpose(); }

StateVector evolve(const Matrix &h, double t, const StateVector &psi, EvolveMode mode) {
  if (h.rows() != psi.amp.size()) throw Error(ErrorKind::DimensionMismatch, "generator and state sizes differ");
  if (t == 0.0) return psi;
  if (mode == EvolveMode::Quantum) {
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw Error(ErrorKind::NotHermitian, "generator");
    Vector out = expm_hermitian(h, cplx(0, -t)) * psi.amp;
    return {psi.n, out / out.norm()};
  }
  if (!is_column_stochastic_generator(h)) {
    throw Error(ErrorKind::NotStochasticGenerator, "off-diagonals must be <= 0 and columns sum to zero");
  }
  for (Eigen::Index i = 0; i < psi.amp.size(); ++i) {
    if (psi.amp[i].real() < -1e-12 || std::abs(psi.amp[i].imag()) > 1e-12) {
      throw Error(ErrorKind::InvalidArgument, "stochastic input must be a nonnegative real vector");
    }
  }
  Matrix g = expm(Matrix(h * cplx(-t, 0)));
  return {psi.n, g * psi.amp};
}

StateVector evolve(const OperatorSum &op, double t, const StateVector &psi, EvolveMode mode) {
  if (op.n != psi.n) throw Error(ErrorKind::DimensionMismatch, "state and operator widths differ");
  return evolve(realize_dense(op), t, psi, mode);
}

StateVector trotter_evolve(const OperatorSum &a, const OperatorSum &b, double t, int steps,
                           const StateVector &psi) {
  if (steps <= 0) throw Error(ErrorKind::InvalidSteps, "steps must be positive");
  if (a.n != b.n || a.n != psi.n) throw Error(ErrorKind::DimensionMismatch, "Trotter operands differ in width");
  double dt = t / steps;
  Matrix ua = expm_hermitian(realize_dense(a), cplx(0, -dt));
  Matrix ub = expm_hermitian(realize_dense(b), cplx(0, -dt));
  Matrix step = ua * ub;
  Vector v = psi.amp;
  for (int s = 0; s < steps; ++s) v = step * v;
  return {psi.n, v};
}

bool is_stoquastic(const OperatorSum &op) {
  Matrix m = realize_dense(op);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i == j) continue;
      if (std::abs(m(i, j).imag()) > 1e-12 || m(i, j).real() > 1e-12) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- I/O

std::string to_text(const OperatorSum &op) {
  std::ostringstream os;
  os << "# n " << op.n << "\n";
  char buf[64];
  for (const auto &t : op.terms) {
    std::snprintf(buf, sizeof buf, "%.17g", t.c);
    os << buf << ' ' << t.p.word() << '\n';
  }
  return os.str();
}

OperatorSum from_text(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  OperatorSum op;
  bool have_n = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string key;
      int n = 0;
      if (ls >> key >> n && key == "n") {
        op.n = n;
        have_n = true;
      }
      continue;
    }
    std::string word;
    if (!(ls >> word)) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": missing word");
    double c = 0;
    try {
      std::size_t used = 0;
      c = std::stod(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception &) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad coefficient");
    }
    PauliString p = PauliString::parse(word);
    if (!have_n && op.terms.empty()) op.n = p.n;
    op.add(c, p);
  }
  return op;
}

std::string to_json(const OperatorSum &op) {
  nlohmann::json j;
  j["n"] = op.n;
  j["terms"] = nlohmann::json::array();
  for (const auto &t : op.terms) j["terms"].push_back({{"c", t.c}, {"word", t.p.word()}});
  return j.dump();
}

OperatorSum operator_from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.contains("n") || !j.contains("terms")) throw Error(ErrorKind::ParseError, "expected {n, terms}");
  OperatorSum op(j["n"].get<int>());
  for (const auto &t : j["terms"]) op.add(t["c"].get<double>(), PauliString::parse(t["word"].get<std::string>()));
  return op;
}

}  // namespace hamlab
