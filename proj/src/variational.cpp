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

#include "hamlab/variational.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "hamlab/parallel.hpp"

namespace hamlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I1{0.0, 1.0};

double fold_angle(double a) {
  double m = std::fmod(a, 2 * kPi);
  if (m < 0) m += 2 * kPi;
  return std::min(m, 2 * kPi - m);
}

// Recursive k-controlled rotation on arbitrary qubit labels. Splitting the
// controls into halves A and B, with Rx/Rz in SU(2):
//   Rx(t)^{AB} = Rx(t/2)^A Rz(pi)^B Rx(-t/2)^A Rz(-pi)^B
//   Rz(t)^{AB} = Rz(t/2)^A Rx(pi)^B Rz(-t/2)^A Rx(-pi)^B
// (rightmost factor first), exact with no leftover phase.
void emit_controlled(Circuit &c, const std::vector<int> &controls, int target, ControlledOp op, double angle) {
  if (controls.size() == 1) {
    c.controlled(controls, target, op, angle);
    return;
  }
  std::size_t half = (controls.size() + 1) / 2;
  std::vector<int> a(controls.begin(), controls.begin() + static_cast<long>(half));
  std::vector<int> b(controls.begin() + static_cast<long>(half), controls.end());
  ControlledOp other = op == ControlledOp::Rx ? ControlledOp::Rz : ControlledOp::Rx;
  emit_controlled(c, b, target, other, -kPi);
  emit_controlled(c, a, target, op, -angle / 2);
  emit_controlled(c, b, target, other, kPi);
  emit_controlled(c, a, target, op, angle / 2);
}

}  // namespace

// ---------------------------------------------------------------- QAOA

RVector cost_diagonal(const OperatorSum &V) {
  if (!V.is_diagonal()) throw Error(ErrorKind::NonDiagonalCost, "QAOA cost operator must be diagonal");
  if (V.n > kStateLimit) throw Error(ErrorKind::DimensionTooLarge, "cost operator exceeds the state limit");
  auto dim = Eigen::Index{1} << V.n;
  RVector d = RVector::Zero(dim);
  for (const auto &t : V.terms) {
    for (Eigen::Index i = 0; i < dim; ++i) d[i] += t.c * t.p.amplitude(static_cast<std::uint64_t>(i)).real();
  }
  return d;
}

StateVector qaoa_state(const RVector &diag, const std::vector<double> &gamma, const std::vector<double> &beta) {
  if (gamma.size() != beta.size()) throw Error(ErrorKind::InvalidArgument, "gamma and beta lengths differ");
  auto dim = diag.size();
  int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  Vector psi = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) psi[i] *= std::exp(-I1 * (gamma[k] * diag[i]));
    double c = std::cos(beta[k]), s = std::sin(beta[k]);
    for (int q = 0; q < n; ++q) {
      auto b = static_cast<Eigen::Index>(qubit_bit(n, q));
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & b) continue;
        cplx x0 = psi[i], x1 = psi[i | b];
        psi[i] = c * x0 - I1 * s * x1;
        psi[i | b] = -I1 * s * x0 + c * x1;
      }
    }
  }
  return {n, psi};
}

double qaoa_energy(const OperatorSum &V, int p, const std::vector<double> &gamma, const std::vector<double> &beta) {
  if (p < 0 || gamma.size() != static_cast<std::size_t>(p) || beta.size() != static_cast<std::size_t>(p)) {
    throw Error(ErrorKind::InvalidArgument, "need p gamma and p beta angles");
  }
  RVector d = cost_diagonal(V);
  StateVector psi = qaoa_state(d, gamma, beta);
  return psi.amp.cwiseAbs2().dot(d);
}

// ---------------------------------------------------------------- optimizer

OptimizeResult nelder_mead(const Objective &f, std::vector<double> x0, const OptimizerConfig &cfg) {
  const std::size_t dim = x0.size();
  OptimizeResult out;
  if (dim == 0) {
    out.value = f(x0);
    out.evaluations = 1;
    return out;
  }
  std::vector<std::vector<double>> pts(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += cfg.initial_step;
  std::vector<double> vals(dim + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double> &x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];
    double spread = vals[worst] - vals[best];
    double diameter = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) diameter = std::max(diameter, std::abs(pts[i][j] - pts[best][j]));
    }
    if (spread <= cfg.tolerance && diameter <= 1e-7) break;
    if (evals >= cfg.max_evaluations) {
      out.budget_exceeded = true;
      break;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j] / static_cast<double>(dim);
    }
    auto along = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j) x[j] = centroid[j] + t * (pts[worst][j] - centroid[j]);
      return x;
    };
    std::vector<double> xr = along(-1.0);
    double fr = eval(xr);
    if (fr < vals[best]) {
      std::vector<double> xe = along(-2.0);
      double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    bool outside = fr < vals[worst];
    std::vector<double> xc = along(outside ? -0.5 : 0.5);
    double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = eval(pts[i]);
    }
  }
  std::size_t best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = pts[best];
  out.value = vals[best];
  out.evaluations = evals;
  return out;
}

OptimizeResult optimize(const Objective &f, int dim, const OptimizerConfig &cfg, const std::vector<double> &x0) {
  if (dim < 0 || cfg.restarts < 1) throw Error(ErrorKind::InvalidArgument, "bad optimizer configuration");
  if (!x0.empty() && x0.size() != static_cast<std::size_t>(dim)) {
    throw Error(ErrorKind::DimensionMismatch, "start point has the wrong length");
  }
  std::vector<OptimizeResult> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(runs.size(), cfg.threads, [&](std::size_t r) {
    std::vector<double> start = x0;
    if (r > 0 || start.empty()) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> u(cfg.init_low, cfg.init_high);
      start.assign(static_cast<std::size_t>(dim), 0.0);
      for (auto &v : start) v = u(rng);
    }
    runs[r] = nelder_mead(f, start, cfg);
  });
  OptimizeResult best = runs[0];
  int total = 0;
  bool exceeded = false;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    total += runs[r].evaluations;
    exceeded = exceeded || runs[r].budget_exceeded;
    if (runs[r].value < best.value) {
      best = runs[r];
      best.best_restart = static_cast<int>(r);
    }
  }
  best.evaluations = total;
  best.budget_exceeded = exceeded;
  return best;
}

// ---------------------------------------------------------------- deficits

DeficitResult reachability_deficit(const CnfInstance &inst, int p, const OptimizerConfig &cfg) {
  if (inst.n > kStateLimit) throw Error(ErrorKind::DimensionTooLarge, "instance exceeds the state limit");
  if (p < 0) throw Error(ErrorKind::InvalidArgument, "depth must be nonnegative");
  auto dim = Eigen::Index{1} << inst.n;
  RVector d(dim);
  for (Eigen::Index x = 0; x < dim; ++x) d[x] = violated_clauses(inst, static_cast<std::uint64_t>(x));
  DeficitResult out;
  out.ground_energy = d.minCoeff();
  auto energy = [&](const std::vector<double> &th) {
    std::vector<double> g(th.begin(), th.begin() + p), b(th.begin() + p, th.end());
    return qaoa_state(d, g, b).amp.cwiseAbs2().dot(d);
  };
  OptimizeResult r = optimize(energy, 2 * p, cfg);
  out.qaoa_energy = r.value;
  out.f = r.value - out.ground_energy;
  out.angles = r.x;
  out.budget_exceeded = r.budget_exceeded;
  return out;
}

// ---------------------------------------------------------------- search

double grover_reference(int n, int steps) {
  if (n < 1 || steps < 0) throw Error(ErrorKind::InvalidArgument, "need n >= 1 and steps >= 0");
  double N = std::ldexp(1.0, n);
  double c = 1 - 2 / N, s = 2 * std::sqrt(N - 1) / N;
  double a = std::sqrt((N - 1) / N), b = 1 / std::sqrt(N);
  for (int i = 0; i < steps; ++i) {
    double a2 = c * a - s * b;
    double b2 = s * a + c * b;
    a = a2;
    b = b2;
  }
  return b * b;
}

Eigen::Matrix2cd grover_transfer(int n, double alpha, double beta) {
  double N = std::ldexp(1.0, n);
  cplx a = std::exp(I1 * alpha) - 1.0, b = std::exp(I1 * beta) - 1.0;
  Eigen::Vector2d s(std::sqrt((N - 1) / N), 1 / std::sqrt(N));
  Eigen::Matrix2cd k = Eigen::Matrix2cd::Identity() + b * (s * s.transpose()).cast<cplx>();
  Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
  v(1, 1) += a;
  return k * v;
}

double search_probability(int n, const std::vector<double> &alpha, const std::vector<double> &beta) {
  if (alpha.size() != beta.size()) throw Error(ErrorKind::InvalidArgument, "alpha and beta lengths differ");
  double N = std::ldexp(1.0, n);
  Eigen::Vector2cd v(std::sqrt((N - 1) / N), 1 / std::sqrt(N));
  for (std::size_t k = 0; k < alpha.size(); ++k) v = grover_transfer(n, alpha[k], beta[k]) * v;
  return std::norm(v[1]);
}

double search_probability_full(int n, std::uint64_t omega, const std::vector<double> &alpha,
                               const std::vector<double> &beta) {
  if (alpha.size() != beta.size()) throw Error(ErrorKind::InvalidArgument, "alpha and beta lengths differ");
  if (n > kStateLimit) throw Error(ErrorKind::DimensionTooLarge, "search register too large");
  auto dim = Eigen::Index{1} << n;
  if (omega >= static_cast<std::uint64_t>(dim)) throw Error(ErrorKind::IndexOutOfRange, "omega out of range");
  double amp0 = 1 / std::sqrt(static_cast<double>(dim));
  Vector psi = Vector::Constant(dim, amp0);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    psi[static_cast<Eigen::Index>(omega)] *= std::exp(I1 * alpha[k]);
    cplx overlap = psi.sum() * amp0;  // <s|psi>
    psi.array() += (std::exp(I1 * beta[k]) - 1.0) * overlap * amp0;
  }
  return std::norm(psi[static_cast<Eigen::Index>(omega)]);
}

GroverMode grover_mode_from_string(const std::string &s) {
  if (s == "var_diffusion") return GroverMode::VarDiffusion;
  if (s == "restricted_diffusion") return GroverMode::RestrictedDiffusion;
  if (s == "matched") return GroverMode::Matched;
  if (s == "two_level") return GroverMode::TwoLevel;
  throw Error(ErrorKind::InvalidArgument, "unknown search mode '" + s + "'");
}

std::string to_string(GroverMode m) {
  switch (m) {
    case GroverMode::VarDiffusion: return "var_diffusion";
    case GroverMode::RestrictedDiffusion: return "restricted_diffusion";
    case GroverMode::Matched: return "matched";
    case GroverMode::TwoLevel: return "two_level";
  }
  return "?";
}

GroverResult variational_grover(int n, int p, GroverMode mode, const OptimizerConfig &cfg) {
  if (n < 1 || p < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 1 and p >= 1");
  auto ps = static_cast<std::size_t>(p);
  // Each mode maps its free parameters to the full (alpha, beta) schedule.
  auto expand = [&](GroverMode m, const std::vector<double> &x, std::vector<double> &a, std::vector<double> &b) {
    a.assign(ps, kPi);
    b.assign(ps, kPi);
    switch (m) {
      case GroverMode::VarDiffusion: b = x; break;
      case GroverMode::RestrictedDiffusion: b.assign(ps, x[0]); break;
      case GroverMode::Matched:
        a.assign(ps, x[0]);
        b.assign(ps, x[0]);
        break;
      case GroverMode::TwoLevel:
        a.assign(x.begin(), x.begin() + p);
        b.assign(x.begin() + p, x.end());
        break;
    }
  };
  auto dims = [&](GroverMode m) {
    switch (m) {
      case GroverMode::VarDiffusion: return p;
      case GroverMode::TwoLevel: return 2 * p;
      default: return 1;
    }
  };
  OptimizerConfig c = cfg;
  c.init_low = 0.0;
  c.init_high = 2 * kPi;
  auto run = [&](GroverMode m) {
    auto obj = [&, m](const std::vector<double> &x) {
      std::vector<double> a, b;
      expand(m, x, a, b);
      return 1.0 - search_probability(n, a, b);
    };
    return optimize(obj, dims(m), c);
  };

  GroverResult out;
  out.n = n;
  out.p = p;
  out.mode = mode;
  OptimizeResult r = run(mode);
  expand(mode, r.x, out.alpha, out.beta);
  out.probability = 1.0 - r.value;
  out.budget_exceeded = r.budget_exceeded;
  out.grover_probability = grover_reference(n, p);
  out.improvement_pct = 100.0 * (out.probability - out.grover_probability) / out.grover_probability;

  OptimizeResult shared = mode == GroverMode::Matched ? r : run(GroverMode::Matched);
  out.angle = fold_angle(shared.x[0]);
  out.angle_probability = 1.0 - shared.value;
  out.budget_exceeded = out.budget_exceeded || shared.budget_exceeded;
  return out;
}

Circuit oracle_circuit(int n, std::uint64_t omega, double alpha) {
  Circuit c(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int q = 0; q < n; ++q) {
    if (!(omega & qubit_bit(n, q))) c.fixed(GateKind::X, q);
  }
  c.controlled_phase(all, alpha);
  for (int q = 0; q < n; ++q) {
    if (!(omega & qubit_bit(n, q))) c.fixed(GateKind::X, q);
  }
  return c;
}

Circuit diffusion_circuit(int n, double beta) {
  Circuit c(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int q = 0; q < n; ++q) c.h(q).fixed(GateKind::X, q);
  c.controlled_phase(all, beta);
  for (int q = 0; q < n; ++q) c.fixed(GateKind::X, q).h(q);
  return c;
}

// ---------------------------------------------------------------- k-controlled

std::uint64_t gate_count(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  std::vector<std::uint64_t> g(static_cast<std::size_t>(k) + 1);
  g[1] = 1;
  for (int j = 2; j <= k; ++j) g[static_cast<std::size_t>(j)] = 2 * g[static_cast<std::size_t>(j / 2)] + 2 * g[static_cast<std::size_t>((j + 1) / 2)];
  return g[static_cast<std::size_t>(k)];
}

std::uint64_t gate_count_closed(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  int m = std::bit_width(static_cast<unsigned>(k)) - 1;
  return 3ULL * static_cast<std::uint64_t>(k) * (1ULL << m) - (1ULL << (1 + 2 * m));
}

Circuit k_controlled_decompose(int k, KTarget target, double angle) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  Circuit c(k + 1);
  std::vector<int> controls(static_cast<std::size_t>(k));
  std::iota(controls.begin(), controls.end(), 0);
  switch (target) {
    case KTarget::X:
      if (k == 1) {
        c.cn(0, 1);
      } else {
        emit_controlled(c, controls, k, ControlledOp::Rx, kPi);
      }
      break;
    case KTarget::Rx: emit_controlled(c, controls, k, ControlledOp::Rx, angle); break;
    case KTarget::Rz: emit_controlled(c, controls, k, ControlledOp::Rz, angle); break;
  }
  return c;
}

Matrix k_controlled_matrix(int k, const Matrix &u) {
  auto dim = Eigen::Index{1} << (k + 1);
  Matrix m = Matrix::Identity(dim, dim);
  m.bottomRightCorner(2, 2) = u;  // all controls set is the last 2x2 block
  return m;
}

Circuit decompose_controlled_phase(int n, const std::vector<int> &qubits, double phase) {
  Circuit c(n);
  if (qubits.empty()) throw Error(ErrorKind::InvalidArgument, "controlled phase needs at least one qubit");
  std::vector<int> rest = qubits;
  double a = phase;
  // diag(1, e^{ia}) on b = e^{ia/2} Rz(a): peel one qubit per step.
  while (rest.size() > 1) {
    int b = rest.back();
    rest.pop_back();
    emit_controlled(c, rest, b, ControlledOp::Rz, a);
    a /= 2;
  }
  c.controlled_phase(rest, a);
  return c;
}

// ---------------------------------------------------------------- entanglement

SchmidtResult schmidt_ebits(const StateVector &psi, std::uint64_t subset) {
  int n = psi.n;
  std::uint64_t full = n >= 64 ? ~0ULL : ((1ULL << n) - 1);
  if (subset == 0 || (subset & ~full) || subset == full) {
    throw Error(ErrorKind::BadBipartition, "bipartition must be a proper nonempty subset");
  }
  std::vector<int> qa, qb;
  for (int q = 0; q < n; ++q) ((subset >> q) & 1 ? qa : qb).push_back(q);
  auto rows = Eigen::Index{1} << qa.size(), cols = Eigen::Index{1} << qb.size();
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < psi.amp.size(); ++i) {
    auto idx = static_cast<std::uint64_t>(i);
    Eigen::Index r = 0, c = 0;
    for (int q : qa) r = (r << 1) | static_cast<Eigen::Index>((idx & qubit_bit(n, q)) != 0);
    for (int q : qb) c = (c << 1) | static_cast<Eigen::Index>((idx & qubit_bit(n, q)) != 0);
    m(r, c) = psi.amp[i];
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  SchmidtResult out;
  out.singular_values = svd.singularValues();
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) out.rank += out.singular_values[i] > 1e-10;
  out.ebits = std::log2(static_cast<double>(std::max(out.rank, 1)));
  return out;
}

int two_qubit_layers(const Circuit &c) {
  std::vector<int> level(static_cast<std::size_t>(c.n), 0);
  int depth = 0;
  for (const auto &g : c.gates) {
    std::vector<int> s = g.support();
    if (s.size() < 2) continue;
    int l = 0;
    for (int q : s) l = std::max(l, level[static_cast<std::size_t>(q)]);
    for (int q : s) level[static_cast<std::size_t>(q)] = l + 1;
    depth = std::max(depth, l + 1);
  }
  return depth;
}

AreaLawReport area_law_check(const Circuit &c) {
  for (const auto &g : c.gates) {
    if (g.support().size() > 2) throw Error(ErrorKind::UnsupportedGate, "area-law check takes one- and two-qubit gates");
  }
  AreaLawReport r;
  r.n = c.n;
  r.layers = two_qubit_layers(c);
  StateVector psi = simulate(c);
  int half = (c.n + 1) / 2;
  std::uint64_t full = (1ULL << c.n) - 1;
  // Cuts are counted once: side A always holds qubit 0.
  for (std::uint64_t m = 1; m < full; m += 2) {
    int crossing = 0;
    for (const auto &g : c.gates) {
      std::vector<int> s = g.support();
      if (s.size() == 2 && (((m >> s[0]) & 1) != ((m >> s[1]) & 1))) ++crossing;
    }
    double e = schmidt_ebits(psi, m).ebits;
    ++r.cuts_checked;
    if (e > r.max_ebits) {
      r.max_ebits = e;
      r.worst_cut = m;
    }
    if (e > std::min(half, r.layers) + 1e-9) ++r.depth_violations;
    if (e > std::min(half, crossing) + 1e-9) ++r.crossing_violations;
  }
  return r;
}

Circuit random_layered_circuit(int n, int layers, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> ang(0.0, kPi);
  Circuit c(n);
  auto locals = [&] {
    for (int q = 0; q < n; ++q) {
      std::array<double, 3> ax{gauss(rng), gauss(rng), gauss(rng)};
      double nrm = std::sqrt(ax[0] * ax[0] + ax[1] * ax[1] + ax[2] * ax[2]);
      for (auto &v : ax) v /= nrm;
      c.rotation(q, ax, ang(rng));
    }
  };
  locals();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int l = 0; l < layers; ++l) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i + 1 < perm.size(); i += 2) c.cn(perm[i], perm[i + 1]);
    locals();
  }
  return c;
}

// ---------------------------------------------------------------- overlap

OverlapBounds energy_overlap_bounds(const Matrix &H, const Vector &phi_in) {
  if (H.rows() != phi_in.size()) throw Error(ErrorKind::DimensionMismatch, "state and operator sizes differ");
  Spectrum s = eigh(H);
  double l0 = s.values[0];
  OverlapBounds b;
  b.gap = s.values.size() > 1 ? s.values[1] - l0 : 0.0;
  if (b.gap <= kDegeneracyTol) throw Error(ErrorKind::DegenerateGround, "ground state is degenerate");
  Vector phi = phi_in / phi_in.norm();
  b.energy = expectation(H, phi).real() - l0;
  b.trace = s.values.sum() - l0 * static_cast<double>(s.values.size());
  b.exact = std::norm(s.vectors.col(0).dot(phi));
  b.upper = 1.0 - b.energy / b.trace;
  if (b.energy >= b.gap) throw Error(ErrorKind::EnergyAboveGap, "state energy is not below the gap");
  b.lower = 1.0 - b.energy / b.gap;
  return b;
}

OverlapBounds energy_overlap_bounds(const OperatorSum &H, const StateVector &phi) {
  return energy_overlap_bounds(realize_dense(H), phi.amp);
}

// ---------------------------------------------------------------- schedules

AdiabaticResult adiabatic_discretize(const OperatorSum &H0, const OperatorSum &Hf, int r, double T, int fine_slices) {
  if (H0.n != Hf.n) throw Error(ErrorKind::DimensionMismatch, "H0 and Hf act on different registers");
  if (r < 1 || fine_slices < 1 || !(T > 0)) throw Error(ErrorKind::InvalidSteps, "need r >= 1, slices >= 1, T > 0");
  Matrix h0 = realize_dense(H0), hf = realize_dense(Hf);
  auto dim = h0.rows();
  AdiabaticResult out;
  out.r = r;
  out.T = T;
  double tau = T / r;
  out.u_split = Matrix::Identity(dim, dim);
  out.u_piecewise = Matrix::Identity(dim, dim);
  for (int k = 1; k <= r; ++k) {
    double s = static_cast<double>(k) / r;
    Matrix w = expm_hermitian(h0, -I1 * (tau * (1 - s)));
    Matrix v = expm_hermitian(hf, -I1 * (tau * s));
    out.u_split = w * v * out.u_split;
    out.u_piecewise = expm_hermitian(Matrix((1 - s) * h0 + s * hf), -I1 * tau) * out.u_piecewise;
  }
  out.u_exact = Matrix::Identity(dim, dim);
  double dt = T / fine_slices;
  for (int j = 0; j < fine_slices; ++j) {
    double s = (j + 0.5) / fine_slices;
    out.u_exact = expm_hermitian(Matrix((1 - s) * h0 + s * hf), -I1 * dt) * out.u_exact;
  }
  out.delta = operator_norm(Matrix(hf - h0)) / r;
  out.bound = std::sqrt(2 * T * out.delta);
  out.distance = operator_norm(Matrix(out.u_exact - out.u_piecewise));
  Spectrum g0 = eigh(h0), gf = eigh(hf);
  Vector psi = out.u_split * g0.vectors.col(0);
  out.ground_fidelity = std::norm(gf.vectors.col(0).dot(psi));
  return out;
}

}  // namespace hamlab
