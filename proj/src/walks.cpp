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

#include "hamlab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "hamlab/error.hpp"
#include "hamlab/parallel.hpp"
#include "json.hpp"

namespace hamlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::SelfAdjointEigenSolver<RMatrix> sym_eig(const RMatrix &m) { return Eigen::SelfAdjointEigenSolver<RMatrix>(m); }

}  // namespace

// ---------------------------------------------------------------- graphs

bool Graph::connected() const {
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (A(u, v) != 0.0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

Graph graph_from_edges(int n, const std::vector<Edge> &edges) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "graph needs at least one node");
  Graph g;
  g.n = n;
  g.A = RMatrix::Zero(n, n);
  for (const auto &e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) throw Error(ErrorKind::IndexOutOfRange, "edge endpoint out of range");
    if (e.i == e.j) throw Error(ErrorKind::InvalidArgument, "self-loops are not allowed");
    g.A(e.i, e.j) += e.w;
    g.A(e.j, e.i) += e.w;
  }
  return g;
}

Graph graph_from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, std::string("graph json: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("edges")) throw Error(ErrorKind::ParseError, "graph json needs n and edges");
  std::vector<Edge> edges;
  try {
    for (const auto &e : j.at("edges")) edges.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.value("w", 1.0)});
    return graph_from_edges(j.at("n").get<int>(), edges);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, std::string("graph json: ") + e.what());
  }
}

Graph graph_from_text(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Edge> edges;
  int n = -1, max_node = -1, line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      if (first && tok.size() == 1) {
        n = std::stoi(tok[0]);
      } else if (tok.size() == 2 || tok.size() == 3) {
        Edge e{std::stoi(tok[0]), std::stoi(tok[1]), tok.size() == 3 ? std::stod(tok[2]) : 1.0};
        max_node = std::max({max_node, e.i, e.j});
        edges.push_back(e);
      } else {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'i j [w]'");
      }
    } catch (const std::logic_error &) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad number");
    }
    first = false;
  }
  return graph_from_edges(n >= 0 ? n : max_node + 1, edges);
}

std::string to_json(const Graph &g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["edges"] = nlohmann::json::array();
  for (int i = 0; i < g.n; ++i) {
    for (int k = i + 1; k < g.n; ++k) {
      if (g.A(i, k) != 0.0) j["edges"].push_back({{"i", i}, {"j", k}, {"w", g.A(i, k)}});
    }
  }
  return j.dump();
}

Graph example_graph_five() { return graph_from_edges(5, {{0, 1}, {0, 3}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}); }

Graph random_connected_graph(int n, double density, double w_low, double w_high, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(w_low, w_high), u(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    edges.push_back({i, pick(rng), w(rng)});
  }
  Graph tree = graph_from_edges(n, edges);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (tree.A(i, j) == 0.0 && u(rng) < density) edges.push_back({i, j, w(rng)});
    }
  }
  return graph_from_edges(n, edges);
}

// ---------------------------------------------------------------- generators

WalkGenerators build_generators(const Graph &g) {
  WalkGenerators w;
  w.A = g.A;
  w.degree = g.A.rowwise().sum();
  for (int i = 0; i < g.n; ++i) {
    if (!(w.degree[i] > 0)) throw Error(ErrorKind::ZeroDegreeNode, "node " + std::to_string(i) + " has zero degree");
  }
  if (!g.connected()) throw Error(ErrorKind::DisconnectedGraph, "graph is not connected");
  w.D = w.degree.asDiagonal();
  w.L = w.D - w.A;
  RVector inv = w.degree.cwiseInverse(), isq = w.degree.cwiseSqrt().cwiseInverse();
  w.S = w.L * inv.asDiagonal();
  w.Q = isq.asDiagonal() * w.L * isq.asDiagonal();
  RMatrix back = w.degree.cwiseSqrt().asDiagonal() * w.Q * isq.asDiagonal();
  if ((back - w.S).cwiseAbs().maxCoeff() > 1e-10) throw Error(ErrorKind::NotLaplacian, "S and Q are not similar");
  return w;
}

RVector stationary_state(const WalkGenerators &gen) { return gen.degree / gen.degree.sum(); }

RVector stochastic_evolve(const RMatrix &H, const RVector &p0, double t) {
  Matrix e = expm(Matrix(H.cast<cplx>() * (-t)));
  return (e * p0.cast<cplx>()).real();
}

RVector quantum_probabilities(const RMatrix &H, const Vector &psi0, double t) {
  auto es = sym_eig(H);
  Matrix V = es.eigenvectors().cast<cplx>();
  Vector ph(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph[k] = std::exp(cplx(0.0, -t * es.eigenvalues()[k]));
  Vector psi = V * ph.asDiagonal() * (V.adjoint() * psi0);
  return psi.cwiseAbs2();
}

LongTimeAverage long_time_average(const WalkGenerators &gen, const Vector &psi0) {
  auto nn = gen.Q.rows();
  if (psi0.size() != nn) throw Error(ErrorKind::DimensionMismatch, "state size differs from node count");
  LongTimeAverage r;
  r.pi = stationary_state(gen);
  auto es = sym_eig(gen.Q);
  const RVector &ev = es.eigenvalues();
  Matrix V = es.eigenvectors().cast<cplx>();
  r.P = RVector::Zero(nn);
  for (Eigen::Index k = 0; k < nn;) {
    Eigen::Index e = k + 1;
    while (e < nn && ev[e] - ev[k] < 1e-10) ++e;
    Matrix blk = V.middleCols(k, e - k);
    r.P += (blk * (blk.adjoint() * psi0)).cwiseAbs2();
    ++r.projectors;
    k = e;
  }
  // Second route: split off the stationary mode, then average the rest.
  Vector phi0 = gen.degree.cwiseSqrt().cast<cplx>();
  phi0 /= phi0.norm();
  cplx a0 = phi0.dot(psi0);
  r.eta = 1.0 - std::norm(a0);
  Vector rest = psi0 - a0 * phi0;
  r.Omega = RVector::Zero(nn);
  for (Eigen::Index k = 0; k < nn;) {
    Eigen::Index e = k + 1;
    while (e < nn && ev[e] - ev[k] < 1e-10) ++e;
    if (k > 0) {
      Matrix blk = V.middleCols(k, e - k);
      r.Omega += (blk * (blk.adjoint() * rest)).cwiseAbs2();
    }
    k = e;
  }
  if (r.eta > 1e-15) r.Omega /= r.eta;
  r.P_split = (1.0 - r.eta) * r.pi + r.eta * r.Omega;
  return r;
}

RVector time_average_numeric(const WalkGenerators &gen, const Vector &psi0, double T, double dt) {
  if (!(T > 0) || !(dt > 0)) throw Error(ErrorKind::InvalidArgument, "T and dt must be positive");
  auto es = sym_eig(gen.Q);
  Matrix V = es.eigenvectors().cast<cplx>();
  Vector c = V.adjoint() * psi0;
  RVector acc = RVector::Zero(psi0.size());
  auto steps = static_cast<long>(std::llround(T / dt));
  Vector ph(c.size());
  for (long s = 0; s < steps; ++s) {
    double t = static_cast<double>(s) * dt;
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph[k] = c[k] * std::exp(cplx(0.0, -t * es.eigenvalues()[k]));
    acc += (V * ph).cwiseAbs2();
  }
  return acc / static_cast<double>(steps);
}

// ---------------------------------------------------------------- entropy

bool is_generalized_laplacian(const RMatrix &L, double tol) {
  if (L.rows() != L.cols() || L.rows() == 0) return false;
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  if (L.rowwise().sum().cwiseAbs().maxCoeff() > tol) return false;
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    for (Eigen::Index j = 0; j < L.cols(); ++j) {
      if (i != j && L(i, j) > tol) return false;
    }
  }
  return true;
}

RMatrix graph_laplacian(const Graph &g) {
  RVector d = g.A.rowwise().sum();
  return RMatrix(d.asDiagonal()) - g.A;
}

ThermalTerms thermal_terms(const RMatrix &L, double beta) {
  if (!is_generalized_laplacian(L)) throw Error(ErrorKind::NotLaplacian, "matrix is not a generalized Laplacian");
  RVector ev = sym_eig(L).eigenvalues();
  double lo = ev.minCoeff();
  RVector w = (-beta * (ev.array() - lo)).exp().matrix();
  double z = w.sum();
  RVector p = w / z;
  ThermalTerms t;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p[k] > 0) t.entropy -= p[k] * std::log2(p[k]);
  }
  t.trace_L_rho = p.dot(ev);
  t.log2_Z = std::log2(z) - beta * lo / std::log(2.0);
  return t;
}

double spectral_entropy(const RMatrix &L, double beta) { return thermal_terms(L, beta).entropy; }

// ---------------------------------------------------------------- PageRank

RMatrix damped_google_matrix(const RMatrix &G, double damping) {
  auto n = G.rows();
  if (G.cols() != n || n == 0) throw Error(ErrorKind::DimensionMismatch, "Google matrix must be square");
  if (damping < 0 || damping > 1) throw Error(ErrorKind::InvalidArgument, "damping must lie in [0, 1]");
  RMatrix m = damping * G + RMatrix::Constant(n, n, (1.0 - damping) / static_cast<double>(n));
  if (m.minCoeff() < -1e-12) throw Error(ErrorKind::NotStochastic, "negative entry");
  RVector cols = m.colwise().sum().transpose();
  if ((cols.array() - 1.0).abs().maxCoeff() > 1e-10) throw Error(ErrorKind::NotStochastic, "columns do not sum to one");
  return m;
}

RMatrix pagerank_hamiltonian(const RMatrix &G, double damping) {
  RMatrix m = RMatrix::Identity(G.rows(), G.rows()) - damped_google_matrix(G, damping);
  return m.transpose() * m;
}

RVector pagerank_ground(const RMatrix &G, double damping) {
  RVector v = sym_eig(pagerank_hamiltonian(G, damping)).eigenvectors().col(0);
  return v / v.sum();
}

RVector pagerank_power(const RMatrix &G, double damping, double tol, int max_iter) {
  RMatrix m = damped_google_matrix(G, damping);
  auto n = m.rows();
  RVector p = RVector::Constant(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < max_iter; ++it) {
    RVector q = m * p;
    double diff = (q - p).lpNorm<1>();
    p = q;
    if (diff < tol) break;
  }
  return p / p.sum();
}

// ---------------------------------------------------------------- phase estimation

std::vector<double> default_phase_times(const OperatorSum &H) {
  double bound = H.coefficient_l1();
  double T = bound > 0 ? 2 * kPi / bound : 1.0;
  std::vector<double> t;
  for (int k = 1; k <= 32; ++k) t.push_back(T * k / 32.0);
  return t;
}

PhaseEstimate phase_estimate(const OperatorSum &H, const StateVector &phi, std::vector<double> times) {
  if (phi.n != H.n) throw Error(ErrorKind::DimensionMismatch, "state width differs from operator");
  Matrix h = realize_dense(H);
  Vector v = phi.amp / phi.amp.norm();
  Vector hv = h * v;
  double lam0 = v.dot(hv).real();
  if ((hv - lam0 * v).norm() > 1e-8) throw Error(ErrorKind::NotEigenvector, "state is not an eigenvector");
  if (times.empty()) times = default_phase_times(H);
  std::sort(times.begin(), times.end());
  if (times.front() <= 0) throw Error(ErrorKind::InvalidArgument, "times must be positive");
  double bound = H.coefficient_l1();
  double step = times.front();
  for (std::size_t k = 1; k < times.size(); ++k) step = std::max(step, times[k] - times[k - 1]);
  if (bound * step >= kPi) throw Error(ErrorKind::AliasRisk, "time grid too coarse for the operator norm bound");

  Spectrum sp = eigh(h);
  Vector c = sp.vectors.adjoint() * v;
  PhaseEstimate r;
  r.times = times;
  std::vector<double> theta;
  for (double t : times) {
    Vector ph(c.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) ph[k] = c[k] * std::exp(cplx(0.0, -t * sp.values[k]));
    Vector u = sp.vectors * ph;  // e^{-iHt} phi: the ancilla |1> branch
    // Ancilla |+>, controlled evolution, optional phase diag(1, -i), Hadamard, read |0>.
    double p0 = 0.25 * (v + u).squaredNorm();
    double pq = 0.25 * (v + cplx(0.0, -1.0) * u).squaredNorm();
    r.p0.push_back(p0);
    r.p0_quad.push_back(pq);
    double a = std::atan2(1.0 - 2.0 * pq, 2.0 * p0 - 1.0);
    if (!theta.empty()) {
      while (a - theta.back() > kPi) a -= 2 * kPi;
      while (a - theta.back() < -kPi) a += 2 * kPi;
    }
    theta.push_back(a);
  }
  double num = 0, den = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    num += theta[k] * times[k];
    den += times[k] * times[k];
  }
  r.lambda = num / den;
  for (std::size_t k = 0; k < times.size(); ++k) {
    double t = times[k];
    r.residual = std::max({r.residual, std::abs(0.5 * (1 + std::cos(r.lambda * t)) - r.p0[k]),
                           std::abs(0.5 * (1 - std::sin(r.lambda * t)) - r.p0_quad[k])});
  }
  if (r.residual > 1e-6) throw Error(ErrorKind::AliasRisk, "cosine fit residual above 1e-6");
  return r;
}

// ---------------------------------------------------------------- Gibbs

double GibbsState::probability(double energy) const {
  double lo = histogram.begin()->first;
  return std::exp(-beta * (energy - lo)) / Z;
}

double GibbsState::occupancy_min() const {
  return static_cast<double>(histogram.begin()->second) * probability(histogram.begin()->first);
}

GibbsState gibbs_state(const std::map<double, std::uint64_t> &histogram, double beta) {
  if (histogram.empty()) throw Error(ErrorKind::EmptyInstance, "empty histogram");
  GibbsState g;
  g.beta = beta;
  g.histogram = histogram;
  // Z is stored relative to the lowest energy to avoid overflow.
  double lo = histogram.begin()->first;
  for (const auto &[e, c] : histogram) g.Z += static_cast<double>(c) * std::exp(-beta * (e - lo));
  return g;
}

RVector thermal_probabilities(const RVector &energies, double beta) {
  double lo = energies.minCoeff();
  RVector w = (-beta * (energies.array() - lo)).exp().matrix();
  return w / w.sum();
}

double gibbs_occupancy(const CnfInstance &inst, double beta) {
  std::vector<std::uint64_t> h = violation_histogram(inst);
  std::map<double, std::uint64_t> m;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h[k]) m[static_cast<double>(k)] = h[k];
  }
  return gibbs_state(m, beta).occupancy_min();
}

std::vector<SweepRow> sat_sweep(int n, const std::vector<double> &alpha_grid, int instances,
                                const std::vector<double> &betas, std::uint64_t seed, int threads) {
  if (n > 24) throw Error(ErrorKind::TooManyVariables, "sweep limited to 24 variables");
  if (n < 3 || instances < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 3 and at least one instance");
  std::size_t na = alpha_grid.size(), nb = betas.size(), ni = static_cast<std::size_t>(instances);
  struct Cell {
    bool sat = false;
    double lambda_min = 0.0;
    std::vector<double> p;
  };
  std::vector<Cell> cells(na * ni);
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    std::size_t a = idx / ni, i = idx % ni;
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(ss);
    int m = static_cast<int>(std::lround(alpha_grid[a] * n));
    CnfInstance inst = random_ksat(n, m, 3, rng);
    std::vector<std::uint64_t> h = violation_histogram(inst);
    std::map<double, std::uint64_t> hist;
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k]) hist[static_cast<double>(k)] = h[k];
    }
    Cell &c = cells[idx];
    c.lambda_min = hist.begin()->first;
    c.sat = c.lambda_min == 0.0;
    for (double b : betas) c.p.push_back(gibbs_state(hist, b).occupancy_min());
  });
  std::vector<SweepRow> rows;
  for (std::size_t a = 0; a < na; ++a) {
    double sat = 0, lam = 0;
    for (std::size_t i = 0; i < ni; ++i) {
      sat += cells[a * ni + i].sat;
      lam += cells[a * ni + i].lambda_min;
    }
    for (std::size_t b = 0; b < nb; ++b) {
      double s = 0, s2 = 0;
      for (std::size_t i = 0; i < ni; ++i) {
        double p = cells[a * ni + i].p[b];
        s += p;
        s2 += p * p;
      }
      double mean = s / static_cast<double>(ni);
      double var = ni > 1 ? std::max(0.0, (s2 - static_cast<double>(ni) * mean * mean) / static_cast<double>(ni - 1)) : 0.0;
      rows.push_back({alpha_grid[a], betas[b], sat / static_cast<double>(ni), mean,
                      std::sqrt(var / static_cast<double>(ni)), lam / static_cast<double>(ni)});
    }
  }
  return rows;
}

double sat_crossing(const std::vector<SweepRow> &rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto &r : rows) {
    if (pts.empty() || pts.back().first != r.alpha) pts.emplace_back(r.alpha, r.frac_sat);
  }
  for (std::size_t k = 1; k < pts.size(); ++k) {
    auto [a0, f0] = pts[k - 1];
    auto [a1, f1] = pts[k];
    if (f0 >= 0.5 && f1 < 0.5) return a0 + (f0 - 0.5) / (f0 - f1) * (a1 - a0);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace hamlab
