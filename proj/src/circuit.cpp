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

#include "hamlab/circuit.hpp"

#include <cmath>
#include <map>

#include "json.hpp"

namespace hamlab {

namespace {

const cplx I1{0.0, 1.0};

Matrix m2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::uint64_t mask_of(int n, const std::vector<int> &qs) {
  std::uint64_t m = 0;
  for (int q : qs) m |= qubit_bit(n, q);
  return m;
}

// Applies a 2x2 block to `target` on every index whose control bits are set.
void apply_controlled_1q(const Matrix &u, int n, std::uint64_t controls, int target, Vector &psi) {
  std::uint64_t tb = qubit_bit(n, target);
  auto dim = static_cast<std::uint64_t>(psi.size());
  cplx a = u(0, 0), b = u(0, 1), c = u(1, 0), d = u(1, 1);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tb) || (i & controls) != controls) continue;
    auto i0 = static_cast<Eigen::Index>(i), i1 = static_cast<Eigen::Index>(i | tb);
    cplx x0 = psi[i0], x1 = psi[i1];
    psi[i0] = a * x0 + b * x1;
    psi[i1] = c * x0 + d * x1;
  }
}

void apply_unitary(const Matrix &u, int n, const std::vector<int> &qs, Vector &psi) {
  std::size_t k = qs.size();
  std::uint64_t mask = mask_of(n, qs);
  std::vector<std::uint64_t> offsets(std::size_t{1} << k);
  for (std::size_t s = 0; s < offsets.size(); ++s) {
    std::uint64_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (s & (std::size_t{1} << (k - 1 - j))) off |= qubit_bit(n, qs[j]);
    }
    offsets[s] = off;
  }
  Vector local(static_cast<Eigen::Index>(offsets.size()));
  auto dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t s = 0; s < offsets.size(); ++s) local[static_cast<Eigen::Index>(s)] = psi[static_cast<Eigen::Index>(base | offsets[s])];
    Vector out = u * local;
    for (std::size_t s = 0; s < offsets.size(); ++s) psi[static_cast<Eigen::Index>(base | offsets[s])] = out[static_cast<Eigen::Index>(s)];
  }
}

const std::map<GateKind, std::string> kKindNames = {
    {GateKind::Rotation, "rotation"}, {GateKind::H, "h"},   {GateKind::P, "p"},
    {GateKind::X, "x"},               {GateKind::Y, "y"},   {GateKind::Z, "z"},
    {GateKind::CN, "cn"},             {GateKind::ControlledPhase, "cphase"},
    {GateKind::Controlled, "controlled"}, {GateKind::Unitary, "unitary"}};

const std::map<ControlledOp, std::string> kOpNames = {
    {ControlledOp::X, "x"},         {ControlledOp::V, "v"},         {ControlledOp::Vdg, "vdg"},
    {ControlledOp::Z, "z"},         {ControlledOp::SqrtZ, "sqrtz"}, {ControlledOp::SqrtZdg, "sqrtzdg"},
    {ControlledOp::Rx, "rx"},       {ControlledOp::Rz, "rz"}};

template <class K>
K lookup(const std::map<K, std::string> &names, const std::string &s) {
  for (const auto &[k, v] : names) {
    if (v == s) return k;
  }
  throw Error(ErrorKind::UnsupportedGate, "unknown gate name '" + s + "'");
}

}  // namespace

std::vector<int> Gate::support() const {
  switch (kind) {
    case GateKind::CN:
    case GateKind::Controlled: {
      std::vector<int> s = controls;
      s.push_back(target);
      return s;
    }
    case GateKind::ControlledPhase: return controls;
    case GateKind::Unitary: return qubits;
    default: return {target};
  }
}

bool Gate::is_clifford() const {
  switch (kind) {
    case GateKind::H:
    case GateKind::P:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CN: return true;
    case GateKind::Controlled: return controls.size() == 1 && (op == ControlledOp::X || op == ControlledOp::Z);
    default: return false;
  }
}

Circuit &Circuit::rotation(int q, std::array<double, 3> axis, double theta) {
  Gate g;
  g.kind = GateKind::Rotation;
  g.target = q;
  g.axis = axis;
  g.angle = theta;
  gates.push_back(g);
  return *this;
}

Circuit &Circuit::fixed(GateKind kind, int q) {
  Gate g;
  g.kind = kind;
  g.target = q;
  gates.push_back(g);
  return *this;
}

Circuit &Circuit::cn(int c, int t) {
  Gate g;
  g.kind = GateKind::CN;
  g.controls = {c};
  g.target = t;
  gates.push_back(g);
  return *this;
}

Circuit &Circuit::controlled_phase(std::vector<int> qs, double phase) {
  Gate g;
  g.kind = GateKind::ControlledPhase;
  g.controls = std::move(qs);
  g.angle = phase;
  gates.push_back(g);
  return *this;
}

Circuit &Circuit::controlled(std::vector<int> cs, int target, ControlledOp op, double angle) {
  Gate g;
  g.kind = GateKind::Controlled;
  g.controls = std::move(cs);
  g.target = target;
  g.op = op;
  g.angle = angle;
  gates.push_back(g);
  return *this;
}

Circuit &Circuit::unitary(std::vector<int> qs, Matrix u) {
  Gate g;
  g.kind = GateKind::Unitary;
  g.qubits = std::move(qs);
  g.matrix = std::move(u);
  gates.push_back(g);
  return *this;
}

Circuit &Circuit::append(const Circuit &o) {
  if (o.n != n) throw Error(ErrorKind::DimensionMismatch, "circuits act on different registers");
  gates.insert(gates.end(), o.gates.begin(), o.gates.end());
  return *this;
}

void Circuit::validate() const {
  for (const auto &g : gates) {
    std::vector<int> s = g.support();
    std::uint64_t seen = 0;
    for (int q : s) {
      if (q < 0 || q >= n) throw Error(ErrorKind::IndexOutOfRange, "gate qubit " + std::to_string(q) + " out of range");
      std::uint64_t b = std::uint64_t{1} << q;
      if (seen & b) throw Error(ErrorKind::InvalidArgument, "gate repeats qubit " + std::to_string(q));
      seen |= b;
    }
    if (g.kind == GateKind::Rotation) {
      double nrm = std::sqrt(g.axis[0] * g.axis[0] + g.axis[1] * g.axis[1] + g.axis[2] * g.axis[2]);
      if (std::abs(nrm - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "rotation axis is not normalized");
    }
    if (g.kind == GateKind::Unitary) {
      auto dim = Eigen::Index{1} << g.qubits.size();
      if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
        throw Error(ErrorKind::DimensionMismatch, "unitary gate matrix has the wrong size");
      }
      if ((g.matrix.adjoint() * g.matrix - Matrix::Identity(dim, dim)).norm() > 1e-10) {
        throw Error(ErrorKind::NotUnitary, "gate matrix is not unitary");
      }
    }
    if (g.kind == GateKind::CN && g.controls.size() != 1) throw Error(ErrorKind::InvalidArgument, "CN needs one control");
  }
}

std::size_t Circuit::two_qubit_count() const {
  std::size_t c = 0;
  for (const auto &g : gates) c += g.support().size() == 2;
  return c;
}

Matrix single_qubit_matrix(ControlledOp op, double angle) {
  const double r = 0.5;
  switch (op) {
    case ControlledOp::X: return m2(0, 1, 1, 0);
    case ControlledOp::V: return m2(r * (1.0 + I1), r * (1.0 - I1), r * (1.0 - I1), r * (1.0 + I1));
    case ControlledOp::Vdg: return m2(r * (1.0 - I1), r * (1.0 + I1), r * (1.0 + I1), r * (1.0 - I1));
    case ControlledOp::Z: return m2(1, 0, 0, -1);
    case ControlledOp::SqrtZ: return m2(1, 0, 0, I1);
    case ControlledOp::SqrtZdg: return m2(1, 0, 0, -I1);
    case ControlledOp::Rx: {
      double c = std::cos(angle / 2), s = std::sin(angle / 2);
      return m2(c, -I1 * s, -I1 * s, c);
    }
    case ControlledOp::Rz: return m2(std::exp(-I1 * (angle / 2)), 0, 0, std::exp(I1 * (angle / 2)));
  }
  return Matrix::Identity(2, 2);
}

Matrix gate_matrix_1q(const Gate &g) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::Rotation: {
      // exp(-i t n.s) = cos t - i sin t (n.s)
      double c = std::cos(g.angle), sn = std::sin(g.angle);
      double x = g.axis[0], y = g.axis[1], z = g.axis[2];
      return m2(c - I1 * sn * z, -I1 * sn * cplx(x, -y), -I1 * sn * cplx(x, y), c + I1 * sn * z);
    }
    case GateKind::H: return m2(s, s, s, -s);
    case GateKind::P: return m2(1, 0, 0, I1);
    case GateKind::X: return m2(0, 1, 1, 0);
    case GateKind::Y: return m2(0, -I1, I1, 0);
    case GateKind::Z: return m2(1, 0, 0, -1);
    default: throw Error(ErrorKind::UnsupportedGate, "not a single-qubit gate");
  }
}

void apply_gate(const Gate &g, int n, Vector &psi) {
  switch (g.kind) {
    case GateKind::CN: apply_controlled_1q(single_qubit_matrix(ControlledOp::X), n, mask_of(n, g.controls), g.target, psi); break;
    case GateKind::Controlled:
      apply_controlled_1q(single_qubit_matrix(g.op, g.angle), n, mask_of(n, g.controls), g.target, psi);
      break;
    case GateKind::ControlledPhase: {
      std::uint64_t m = mask_of(n, g.controls);
      cplx ph = std::exp(I1 * g.angle);
      for (Eigen::Index i = 0; i < psi.size(); ++i) {
        if ((static_cast<std::uint64_t>(i) & m) == m) psi[i] *= ph;
      }
      break;
    }
    case GateKind::Unitary: apply_unitary(g.matrix, n, g.qubits, psi); break;
    default: apply_controlled_1q(gate_matrix_1q(g), n, 0, g.target, psi);
  }
}

StateVector simulate(const Circuit &c, const StateVector &psi0) {
  if (c.n > kStateLimit) throw Error(ErrorKind::DimensionTooLarge, "circuit exceeds the state-vector limit");
  if (psi0.n != c.n) throw Error(ErrorKind::DimensionMismatch, "state and circuit sizes differ");
  c.validate();
  Vector psi = psi0.amp;
  for (const auto &g : c.gates) apply_gate(g, c.n, psi);
  return {c.n, psi};
}

StateVector simulate(const Circuit &c) { return simulate(c, StateVector::zeros(c.n)); }

Matrix circuit_matrix(const Circuit &c) {
  if (c.n > kDenseLimit) throw Error(ErrorKind::DimensionTooLarge, "circuit exceeds the dense limit");
  c.validate();
  auto dim = Eigen::Index{1} << c.n;
  Matrix u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    Vector col = Vector::Zero(dim);
    col[j] = 1.0;
    for (const auto &g : c.gates) apply_gate(g, c.n, col);
    u.col(j) = col;
  }
  return u;
}

double phase_distance(const Matrix &a, const Matrix &b) {
  cplx t = (b.adjoint() * a).trace();
  cplx ph = std::abs(t) > 0 ? t / std::abs(t) : cplx(1.0);
  return (a - ph * b).norm();
}

std::string to_json(const Circuit &c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["gates"] = nlohmann::json::array();
  for (const auto &g : c.gates) {
    nlohmann::json e;
    e["kind"] = kKindNames.at(g.kind);
    e["qubits"] = g.support();
    switch (g.kind) {
      case GateKind::Rotation: e["params"] = {g.axis[0], g.axis[1], g.axis[2], g.angle}; break;
      case GateKind::ControlledPhase: e["params"] = {g.angle}; break;
      case GateKind::Controlled:
        e["op"] = kOpNames.at(g.op);
        e["params"] = {g.angle};
        break;
      case GateKind::Unitary: {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
          nlohmann::json row = nlohmann::json::array();
          for (Eigen::Index k = 0; k < g.matrix.cols(); ++k) row.push_back({g.matrix(r, k).real(), g.matrix(r, k).imag()});
          rows.push_back(row);
        }
        e["matrix"] = rows;
        break;
      }
      default: break;
    }
    j["gates"].push_back(e);
  }
  return j.dump();
}

Circuit circuit_from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    Circuit c(j.at("n").get<int>());
    for (const auto &e : j.at("gates")) {
      GateKind kind = lookup(kKindNames, e.at("kind").get<std::string>());
      auto qs = e.at("qubits").get<std::vector<int>>();
      if (qs.empty()) throw Error(ErrorKind::ParseError, "gate without qubits");
      std::vector<double> params = e.value("params", std::vector<double>{});
      auto param = [&](std::size_t i) {
        if (i >= params.size()) throw Error(ErrorKind::ParseError, "missing gate parameter");
        return params[i];
      };
      switch (kind) {
        case GateKind::Rotation: c.rotation(qs[0], {param(0), param(1), param(2)}, param(3)); break;
        case GateKind::CN:
          if (qs.size() != 2) throw Error(ErrorKind::ParseError, "cn needs two qubits");
          c.cn(qs[0], qs[1]);
          break;
        case GateKind::ControlledPhase: c.controlled_phase(qs, param(0)); break;
        case GateKind::Controlled: {
          int t = qs.back();
          qs.pop_back();
          c.controlled(qs, t, lookup(kOpNames, e.at("op").get<std::string>()), params.empty() ? 0.0 : params[0]);
          break;
        }
        case GateKind::Unitary: {
          const auto &rows = e.at("matrix");
          Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
          for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t k = 0; k < rows[r].size(); ++k) {
              m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = cplx(rows[r][k][0].get<double>(), rows[r][k][1].get<double>());
            }
          }
          c.unitary(qs, m);
          break;
        }
        default: c.fixed(kind, qs[0]);
      }
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace hamlab
