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

#include "hamlab/clock.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace hamlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

PauliSum proj(int n, int q, int bit) { return PauliSum::ket_bra(n, q, bit, bit); }

// |t><s| on an m-qubit binary clock.
PauliSum binary_ket_bra(int m, std::uint64_t t, std::uint64_t s) {
  PauliSum out = PauliSum::identity(m);
  for (int j = 0; j < m; ++j) {
    int tb = static_cast<int>((t >> (m - 1 - j)) & 1U), sb = static_cast<int>((s >> (m - 1 - j)) & 1U);
    out = out * PauliSum::ket_bra(m, j, tb, sb);
  }
  return out;
}

Matrix sigma(const std::array<double, 3> &v) {
  Matrix m(2, 2);
  m << v[2], cplx(v[0], -v[1]), cplx(v[0], v[1]), -v[2];
  return m;
}

std::array<double, 3> cross(const std::array<double, 3> &a, const std::array<double, 3> &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_hermitian_unitary(const Matrix &m) {
  auto d = m.rows();
  return (m - m.adjoint()).norm() < 1e-12 && (m * m - Matrix::Identity(d, d)).norm() < 1e-10;
}

// Writes a one-qubit unitary (up to phase) as a product of two reflections
// (a.s)(b.s); b is applied first.
void emit_reflections(Circuit &out, int q, const Matrix &u) {
  cplx root = std::sqrt(u.determinant());
  Matrix m = u / root;
  const cplx I1{0.0, 1.0};
  double c = (0.5 * (m(0, 0) + m(1, 1))).real();
  std::array<double, 3> v{(0.5 * I1 * (m(0, 1) + m(1, 0))).real(), (-0.5 * (m(0, 1) - m(1, 0))).real(),
                          (0.5 * I1 * (m(0, 0) - m(1, 1))).real()};
  double s = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (s < 1e-15) {
    if (c < 0) {  // -I: the pair (Z)(Z) is I, so use (X)(-X) = -I
      out.unitary({q}, sigma({0, 0, 1}));
      out.unitary({q}, sigma({0, 0, 1}));
    }
    return;
  }
  std::array<double, 3> n{v[0] / s, v[1] / s, v[2] / s};
  double theta = std::atan2(s, c);
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n[static_cast<std::size_t>(i)]) < std::abs(n[static_cast<std::size_t>(k)])) k = i;
  }
  std::array<double, 3> e{0, 0, 0};
  e[static_cast<std::size_t>(k)] = 1.0;
  double en = e[0] * n[0] + e[1] * n[1] + e[2] * n[2];
  std::array<double, 3> a{e[0] - en * n[0], e[1] - en * n[1], e[2] - en * n[2]};
  double an = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  for (auto &x : a) x /= an;
  std::array<double, 3> axn = cross(a, n), b{};
  for (std::size_t i = 0; i < 3; ++i) b[i] = std::cos(theta) * a[i] + std::sin(theta) * axn[i];
  out.unitary({q}, sigma(b));
  out.unitary({q}, sigma(a));
}

}  // namespace

Matrix local_gate_matrix(const Gate &g) {
  std::vector<int> s = g.support();
  Circuit c(static_cast<int>(s.size()));
  Gate h = g;
  auto relabel = [&](int q) { return static_cast<int>(std::find(s.begin(), s.end(), q) - s.begin()); };
  h.target = relabel(g.target);
  for (auto &q : h.controls) q = relabel(q);
  for (auto &q : h.qubits) q = relabel(q);
  if (g.kind == GateKind::Unitary) h.target = 0;
  c.gates.push_back(h);
  return circuit_matrix(c);
}

PauliSum gate_pauli(const Gate &g, int n) {
  std::vector<int> s = g.support();
  PauliSum local = PauliSum::from_matrix(local_gate_matrix(g), 1e-14);
  PauliSum out(n);
  for (const auto &[c, p] : local.terms) {
    PauliString q(n);
    q.phase = p.phase;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if ((p.x >> j) & 1U) q.x |= std::uint64_t{1} << s[j];
      if ((p.z >> j) & 1U) q.z |= std::uint64_t{1} << s[j];
    }
    out.add(c, q);
  }
  return out;
}

// ---------------------------------------------------------------- telescope

OperatorSum product_projector_sum(int n) {
  OperatorSum p(n);
  p.add_identity(0.5 * n);
  for (int q = 0; q < n; ++q) p.add(-0.5, PauliString::single(n, q, 'Z'));
  return p;
}

int non_clifford_count(const Circuit &c, int k) {
  int count = 0;
  for (int l = 0; l < k; ++l) count += !c.gates[static_cast<std::size_t>(l)].is_clifford();
  return count;
}

OperatorSum telescope(const Circuit &c, int k, int max_non_clifford) {
  if (k < 0 || k > static_cast<int>(c.gates.size())) throw Error(ErrorKind::IndexOutOfRange, "prefix length out of range");
  c.validate();
  if (non_clifford_count(c, k) > max_non_clifford) {
    throw Error(ErrorKind::CardinalityBlowup, "prefix holds more non-Clifford gates than allowed");
  }
  int n = c.n;
  OperatorSum h = product_projector_sum(n);
  for (int l = 0; l < k; ++l) {
    const Gate &g = c.gates[static_cast<std::size_t>(l)];
    std::vector<CliffordGate> seq;
    switch (g.kind) {
      case GateKind::H: seq = {{CliffordGate::Kind::H, g.target}}; break;
      case GateKind::P: seq = {{CliffordGate::Kind::P, g.target}}; break;
      case GateKind::CN: seq = {{CliffordGate::Kind::CN, g.controls[0], g.target}}; break;
      case GateKind::Controlled:
        if (g.is_clifford() && g.op == ControlledOp::X) seq = {{CliffordGate::Kind::CN, g.controls[0], g.target}};
        if (g.is_clifford() && g.op == ControlledOp::Z) {
          seq = {{CliffordGate::Kind::H, g.target}, {CliffordGate::Kind::CN, g.controls[0], g.target}, {CliffordGate::Kind::H, g.target}};
        }
        break;
      default: break;
    }
    OperatorSum next(n);
    if (!seq.empty()) {
      for (const auto &t : h.terms) {
        PauliString p = t.p;
        for (const auto &cg : seq) p = clifford_conjugate(p, cg);
        next.add(t.c, p);
      }
    } else if (g.kind == GateKind::X || g.kind == GateKind::Y || g.kind == GateKind::Z) {
      PauliString gp = PauliString::single(n, g.target, g.kind == GateKind::X ? 'X' : g.kind == GateKind::Y ? 'Y' : 'Z');
      for (const auto &t : h.terms) next.add(gp.commutes(t.p) ? t.c : -t.c, t.p);
    } else {
      PauliSum u = gate_pauli(g, n);
      next = (u * PauliSum::from(h) * u.adjoint()).hermitian(1e-9);
    }
    h = next.merged(1e-12);
  }
  return h;
}

// ---------------------------------------------------------------- clock

ClockEncoding clock_encoding_from_string(const std::string &s) {
  if (s == "unary") return ClockEncoding::Unary;
  if (s == "binary") return ClockEncoding::Binary;
  throw Error(ErrorKind::InvalidArgument, "unknown clock encoding '" + s + "'");
}

std::string to_string(ClockEncoding e) { return e == ClockEncoding::Unary ? "unary" : "binary"; }

int clock_qubits(int L, ClockEncoding enc) {
  if (enc == ClockEncoding::Unary) return L;
  int m = 1;
  while ((1 << m) < L + 1) ++m;
  return m;
}

std::uint64_t clock_index(int t, int L, ClockEncoding enc) {
  if (enc == ClockEncoding::Binary) return static_cast<std::uint64_t>(t);
  return ((std::uint64_t{1} << t) - 1) << (L - t);
}

OperatorSum ClockHamiltonian::total() const { return (H_in * J + H_prop * K + H_clock * J).merged(1e-14); }

OperatorSum ClockHamiltonian::initial() const { return (H_in + H_clock + H_clockinit).merged(1e-14); }

ClockHamiltonian clock_hamiltonian(const Circuit &c, double J, double K, int M, ClockEncoding enc,
                                   std::uint64_t input) {
  if (!(J > 0) || !(K > 0)) throw Error(ErrorKind::InvalidWeights, "J and K must be positive");
  if (M < 0) throw Error(ErrorKind::InvalidArgument, "padding must be nonnegative");
  c.validate();
  ClockHamiltonian h;
  h.n_system = c.n;
  h.M = M;
  h.L = static_cast<int>(c.gates.size()) + M;
  h.encoding = enc;
  h.J = J;
  h.K = K;
  h.input = input;
  if (enc == ClockEncoding::Unary && h.L < 1) throw Error(ErrorKind::InvalidArgument, "unary clock needs L >= 1");
  h.n_clock = clock_qubits(h.L, enc);
  if (h.n_total() > kDenseLimit) throw Error(ErrorKind::DenseLimit, "clock construction exceeds the dense limit");
  int n = c.n, m = h.n_clock, L = h.L;
  PauliSum sys_id = PauliSum::identity(n);

  PauliSum clock0 = enc == ClockEncoding::Binary ? binary_ket_bra(m, 0, 0) : proj(m, 0, 0);
  PauliSum in(n);
  for (int q = 0; q < n; ++q) {
    int bit = static_cast<int>((input >> (n - 1 - q)) & 1U);
    in = in + proj(n, q, 1 - bit);
  }
  h.H_in = in.tensor(clock0).hermitian();

  PauliSum clock_pen(m), clock_init(m);
  if (enc == ClockEncoding::Unary) {
    for (int q = 0; q + 1 < m; ++q) clock_pen = clock_pen + proj(m, q, 0) * proj(m, q + 1, 1);
    clock_init = proj(m, 0, 1);
  } else {
    for (std::uint64_t t = static_cast<std::uint64_t>(L) + 1; t < (std::uint64_t{1} << m); ++t) {
      clock_pen = clock_pen + binary_ket_bra(m, t, t);
    }
    clock_init = PauliSum::identity(m) + clock0 * cplx(-1.0);
  }
  h.H_clock = sys_id.tensor(clock_pen).hermitian().merged(1e-14);
  h.H_clockinit = sys_id.tensor(clock_init).hermitian().merged(1e-14);
  if (h.H_clock.terms.empty()) h.H_clock = OperatorSum(h.n_total());

  h.H_prop = OperatorSum(h.n_total());
  for (int t = 1; t <= L; ++t) {
    PauliSum p(m), trans(m);
    if (enc == ClockEncoding::Binary) {
      auto tt = static_cast<std::uint64_t>(t);
      p = binary_ket_bra(m, tt - 1, tt - 1) + binary_ket_bra(m, tt, tt);
      trans = binary_ket_bra(m, tt, tt - 1);
    } else {
      // Clock qubit t-1 flips 0 -> 1 with its neighbours fixed to 1 (left) and 0 (right).
      int q = t - 1;
      PauliSum ctx = PauliSum::identity(m);
      if (q - 1 >= 0) ctx = ctx * proj(m, q - 1, 1);
      if (q + 1 < m) ctx = ctx * proj(m, q + 1, 0);
      p = ctx;
      trans = ctx * PauliSum::ket_bra(m, q, 1, 0);
    }
    int gi = t - 1;
    PauliSum u = gi < static_cast<int>(c.gates.size()) ? gate_pauli(c.gates[static_cast<std::size_t>(gi)], n) : sys_id;
    PauliSum fwd = u.tensor(trans);
    PauliSum ht = sys_id.tensor(p) + fwd * cplx(-1.0) + fwd.adjoint() * cplx(-1.0);
    OperatorSum term = (ht * cplx(0.5)).hermitian().merged(1e-14);
    h.H_t.push_back(term);
    h.H_prop += term;
  }
  h.H_prop.merge(1e-14);
  if (h.H_prop.terms.empty()) h.H_prop = OperatorSum(h.n_total());
  return h;
}

StateVector history_state(const Circuit &c, int M, ClockEncoding enc, std::uint64_t input) {
  int L = static_cast<int>(c.gates.size()) + M;
  if (enc == ClockEncoding::Unary && L < 1) throw Error(ErrorKind::InvalidArgument, "unary clock needs L >= 1");
  int m = clock_qubits(L, enc);
  int nt = c.n + m;
  if (nt > kStateLimit) throw Error(ErrorKind::DenseLimit, "history state exceeds the state limit");
  c.validate();
  Vector amp = Vector::Zero(Eigen::Index{1} << nt);
  Vector psi = StateVector::basis(c.n, input).amp;
  double w = 1.0 / std::sqrt(static_cast<double>(L + 1));
  for (int t = 0; t <= L; ++t) {
    if (t >= 1 && t - 1 < static_cast<int>(c.gates.size())) apply_gate(c.gates[static_cast<std::size_t>(t - 1)], c.n, psi);
    std::uint64_t ci = clock_index(t, L, enc);
    for (Eigen::Index s = 0; s < psi.size(); ++s) {
      amp[static_cast<Eigen::Index>((static_cast<std::uint64_t>(s) << m) | ci)] += w * psi[s];
    }
  }
  return {nt, amp};
}

RMatrix propagation_chain(int L) {
  RMatrix h = RMatrix::Zero(L + 1, L + 1);
  for (int t = 1; t <= L; ++t) {
    h(t - 1, t - 1) += 0.5;
    h(t, t) += 0.5;
    h(t, t - 1) -= 0.5;
    h(t - 1, t) -= 0.5;
  }
  return h;
}

GapAnalysis gap_analysis(int L, double J, double K) {
  if (L < 0) throw Error(ErrorKind::InvalidArgument, "L must be nonnegative");
  if (!(J > 0) || !(K > 0)) throw Error(ErrorKind::InvalidWeights, "J and K must be positive");
  GapAnalysis g;
  g.L = L;
  g.J = J;
  g.K = K;
  RMatrix chain = propagation_chain(L);
  g.chain_spectrum = Eigen::SelfAdjointEigenSolver<RMatrix>(chain).eigenvalues();
  g.closed_form = RVector(L + 1);
  for (int k = 0; k <= L; ++k) g.closed_form[k] = 1 - std::cos(kPi * k / (L + 1));
  g.max_chain_error = (g.chain_spectrum - g.closed_form).cwiseAbs().maxCoeff();

  // System qubit (x) chain; the input penalty sits on system |1> at t = 0.
  auto d = L + 1;
  RMatrix full = RMatrix::Zero(2 * d, 2 * d);
  full.topLeftCorner(d, d) = K * chain;
  full.bottomRightCorner(d, d) = K * chain;
  full(d, d) += J;
  RVector ev = Eigen::SelfAdjointEigenSolver<RMatrix>(full).eigenvalues();
  g.gap_exact = ev[1] - ev[0];
  g.gap_bound = std::max(J, K * kPi * kPi / (2.0 * (L + 1) * (L + 1)));
  g.bound_holds = g.gap_exact >= g.gap_bound - 1e-9;
  return g;
}

OverlapReport acceptance_overlap(const Circuit &c, int M, ClockEncoding enc, std::uint64_t input) {
  if (M < 0) throw Error(ErrorKind::InvalidArgument, "padding must be nonnegative");
  OverlapReport r;
  r.L = static_cast<int>(c.gates.size());
  r.M = M;
  int Lp = r.L + M;
  r.closed_form = M == 0 ? 0.0 : 1.0 / (1.0 + (r.L + 1.0) / M);
  StateVector hist = history_state(c, M, enc, input);
  Vector out = simulate(c, StateVector::basis(c.n, input)).amp;
  int m = clock_qubits(Lp, enc);
  for (int t = r.L + 1; t <= Lp; ++t) {
    std::uint64_t ci = clock_index(t, Lp, enc);
    cplx ov = 0.0;
    for (Eigen::Index s = 0; s < out.size(); ++s) {
      ov += std::conj(out[s]) * hist.amp[static_cast<Eigen::Index>((static_cast<std::uint64_t>(s) << m) | ci)];
    }
    r.measured += std::norm(ov);
  }
  return r;
}

Matrix clock_rotation(const Circuit &c, int M) {
  int L = static_cast<int>(c.gates.size()) + M;
  int m = clock_qubits(L, ClockEncoding::Binary);
  int nt = c.n + m;
  if (nt > kDenseLimit) throw Error(ErrorKind::DenseLimit, "rotation exceeds the dense limit");
  auto ds = Eigen::Index{1} << c.n, dc = Eigen::Index{1} << m;
  Matrix w = Matrix::Zero(ds * dc, ds * dc);
  Matrix u = Matrix::Identity(ds, ds);
  for (Eigen::Index t = 0; t < dc; ++t) {
    if (t >= 1 && t - 1 < static_cast<Eigen::Index>(c.gates.size())) {
      Circuit one(c.n);
      one.gates.push_back(c.gates[static_cast<std::size_t>(t - 1)]);
      u = circuit_matrix(one) * u;
    }
    Matrix blk = t <= L ? u : Matrix::Identity(ds, ds);
    for (Eigen::Index a = 0; a < ds; ++a) {
      for (Eigen::Index b = 0; b < ds; ++b) w(a * dc + t, b * dc + t) = blk(a, b);
    }
  }
  return w;
}

// ---------------------------------------------------------------- compilation

Matrix reflection_R(double theta) { return sigma({std::sin(theta), 0.0, std::cos(theta)}); }

Matrix reflection_Rij(double phi) {
  Matrix m = Matrix::Zero(4, 4);
  m.topLeftCorner(2, 2) = Matrix::Identity(2, 2);
  m.bottomRightCorner(2, 2) = reflection_R(phi);
  return m;
}

Circuit self_inverse_compile(const Circuit &c) {
  c.validate();
  Circuit out(c.n);
  for (const auto &g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::Y:
      case GateKind::Z:
      case GateKind::CN: out.gates.push_back(g); break;
      case GateKind::Controlled:
        if (g.op != ControlledOp::X && g.op != ControlledOp::Z) {
          throw Error(ErrorKind::UnsupportedGate, "controlled gate is not self-inverse");
        }
        out.gates.push_back(g);
        break;
      case GateKind::Rotation:
      case GateKind::P: emit_reflections(out, g.target, gate_matrix_1q(g)); break;
      case GateKind::ControlledPhase:
        if (g.controls.size() != 1) throw Error(ErrorKind::UnsupportedGate, "multi-qubit phase gates are not compiled");
        emit_reflections(out, g.controls[0], local_gate_matrix(g));
        break;
      case GateKind::Unitary:
        if (is_hermitian_unitary(g.matrix)) {
          out.gates.push_back(g);
        } else if (g.qubits.size() == 1) {
          emit_reflections(out, g.qubits[0], g.matrix);
        } else {
          throw Error(ErrorKind::UnsupportedGate, "multi-qubit unitary is not self-inverse");
        }
        break;
    }
  }
  return out;
}

RMatrix realify_gate(const Matrix &U) {
  auto d = U.rows();
  if (U.cols() != d || (U.adjoint() * U - Matrix::Identity(d, d)).norm() > 1e-10) {
    throw Error(ErrorKind::NotUnitary, "realify needs a unitary matrix");
  }
  RMatrix out = RMatrix::Zero(2 * d, 2 * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      double re = U(i, j).real(), im = U(i, j).imag();
      out(2 * i, 2 * j) = re;
      out(2 * i + 1, 2 * j + 1) = re;
      out(2 * i + 1, 2 * j) = im;   // |1><0|
      out(2 * i, 2 * j + 1) = -im;  // -|0><1|
    }
  }
  return out;
}

RVector realify_encode(const Vector &psi) {
  RVector v(2 * psi.size());
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    v[2 * j] = psi[j].real();
    v[2 * j + 1] = psi[j].imag();
  }
  return v;
}

Vector realify_decode(const RVector &v) {
  if (v.size() % 2) throw Error(ErrorKind::DimensionMismatch, "realified vector has odd length");
  Vector psi(v.size() / 2);
  for (Eigen::Index j = 0; j < psi.size(); ++j) psi[j] = cplx(v[2 * j], v[2 * j + 1]);
  return psi;
}

std::string report_json(const ClockHamiltonian &h, const GapAnalysis &g, const OverlapReport &o) {
  nlohmann::json j;
  j["L"] = h.L;
  j["M"] = h.M;
  j["encoding"] = to_string(h.encoding);
  j["cardinality"] = h.total().cardinality();
  j["gap_exact"] = g.gap_exact;
  j["gap_bound"] = g.gap_bound;
  j["overlap"] = o.measured;
  return j.dump();
}

}  // namespace hamlab
