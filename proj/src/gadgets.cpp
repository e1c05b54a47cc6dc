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

#include "hamlab/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hamlab {

namespace {

double sgn(double a) { return a < 0 ? -1.0 : 1.0; }

OperatorSum slack_projector(int n_total, int w, int bit) {
  OperatorSum p(n_total);
  p.add_identity(0.5);
  p.add(bit == 0 ? 0.5 : -0.5, PauliString::single(n_total, w, 'Z'));
  return p;
}

OperatorSum slack_single(int n_total, int w, char letter) {
  OperatorSum p(n_total);
  p.add(1.0, PauliString::single(n_total, w, letter));
  return p;
}

double dense_norm(const OperatorSum &op) { return operator_norm(realize_dense(op)); }

void finish(GadgetRealization &g, double norm_else, double epsilon) {
  g.V.merge(1e-15);
  g.penalty = slack_projector(g.n_system + 1, g.slack, 1) * g.delta;
  g.norm_V = dense_norm(g.V);
  g.hypothesis_ok = g.norm_V <= g.delta / 2;
  g.z_max = norm_else + std::abs(g.alpha) + epsilon;
}

// Indices of the slack-|0> (low) and slack-|1> (high) blocks. The slack is
// the last qubit, i.e. the least significant bit of the basis index.
void block_indices(int n_total, std::vector<Eigen::Index> &lo, std::vector<Eigen::Index> &hi) {
  Eigen::Index dim = Eigen::Index{1} << n_total;
  for (Eigen::Index i = 0; i < dim; ++i) (i & 1 ? hi : lo).push_back(i);
}

Matrix block(const Matrix &m, const std::vector<Eigen::Index> &rows, const std::vector<Eigen::Index> &cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

double max_spectral_error(const GadgetRealization &g, std::vector<double> *per_level = nullptr,
                          double *leakage = nullptr) {
  Matrix h = realize_dense(g.total());
  Eigen::Index low = Eigen::Index{1} << g.n_system;
  RVector want = eigenvalues(realize_dense(g.target));
  double worst = 0.0;
  if (leakage) {
    Spectrum s = eigh(h);
    double leak = 0.0;
    for (Eigen::Index j = 0; j < low; ++j) {
      double pop = 0.0;
      for (Eigen::Index i = 1; i < h.rows(); i += 2) pop += std::norm(s.vectors(i, j));
      leak = std::max(leak, pop);
      double e = std::abs(s.values[j] - want[j]);
      if (per_level) per_level->push_back(e);
      worst = std::max(worst, e);
    }
    *leakage = leak;
    return worst;
  }
  RVector got = eigenvalues(h);
  for (Eigen::Index j = 0; j < low; ++j) {
    double e = std::abs(got[j] - want[j]);
    if (per_level) per_level->push_back(e);
    worst = std::max(worst, e);
  }
  return worst;
}

}  // namespace

OperatorSum GadgetSpec::target() const {
  OperatorSum t = H_else.n ? H_else : OperatorSum(A.n);
  t += A.multiply(B) * alpha;
  return t.merged(1e-15);
}

double subdivision_delta(double alpha, double epsilon, double norm_else) {
  double a = std::abs(alpha);
  return (2 * a / epsilon + 1) * (a + epsilon + 2 * norm_else);
}

void check_spec(const GadgetSpec &spec) {
  if (spec.alpha == 0.0) throw Error(ErrorKind::ZeroCoupling, "target coupling alpha is zero");
  if (!(spec.epsilon > 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (spec.A.n != spec.B.n || (spec.H_else.n && spec.H_else.n != spec.A.n)) {
    throw Error(ErrorKind::DimensionMismatch, "A, B and H_else must act on the same system");
  }
  if (spec.A.n + 1 > kDenseLimit) throw Error(ErrorKind::DimensionTooLarge, "gadget system too large");
  for (const OperatorSum *op : {&spec.A, &spec.B}) {
    double nrm = dense_norm(*op);
    if (std::abs(nrm - 1.0) > 1e-10) {
      throw Error(ErrorKind::InvalidArgument, "A and B must have unit operator norm, got " + std::to_string(nrm));
    }
  }
  std::uint64_t support_a = 0, support_b = 0;
  for (const auto &t : spec.A.terms) support_a |= t.p.x | t.p.z;
  for (const auto &t : spec.B.terms) support_b |= t.p.x | t.p.z;
  if (support_a & support_b) throw Error(ErrorKind::InvalidArgument, "A and B must act on disjoint qubits");
}

GadgetRealization subdivision_gadget(const GadgetSpec &spec) {
  check_spec(spec);
  double norm_else = spec.H_else.n ? dense_norm(spec.H_else) : 0.0;
  return subdivision_gadget(spec, subdivision_delta(spec.alpha, spec.epsilon, norm_else));
}

GadgetRealization subdivision_gadget(const GadgetSpec &spec, double delta) {
  check_spec(spec);
  if (!(delta > 0)) throw Error(ErrorKind::NonpositiveDelta, "gadget gap must be positive");
  int n = spec.n_system();
  int nt = n + 1;
  GadgetRealization g;
  g.n_system = n;
  g.slack = n;
  g.delta = delta;
  g.alpha = spec.alpha;
  g.target = spec.target();

  double a = std::abs(spec.alpha);
  double kappa = sgn(spec.alpha) * std::sqrt(a * delta / 2);
  double lambda = -std::sqrt(a * delta / 2);
  OperatorSum A = spec.A.embed(nt, 0), B = spec.B.embed(nt, 0);
  OperatorSum squares = A.multiply(A) * (kappa * kappa / delta) + B.multiply(B) * (lambda * lambda / delta);
  OperatorSum coupling = A * kappa + B * lambda;

  g.V = OperatorSum(nt);
  if (spec.H_else.n) g.V += spec.H_else.embed(nt, 0);
  g.V += squares.multiply(slack_projector(nt, n, 0));
  g.V += coupling.multiply(slack_single(nt, n, 'X'));
  finish(g, spec.H_else.n ? dense_norm(spec.H_else) : 0.0, spec.epsilon);
  return g;
}

GadgetRealization yy_gadget(double alpha, const OperatorSum &H_else, double delta, double epsilon) {
  if (alpha == 0.0) throw Error(ErrorKind::ZeroCoupling, "target coupling alpha is zero");
  if (!(delta > 0)) throw Error(ErrorKind::NonpositiveDelta, "gadget gap must be positive");
  if (H_else.n && H_else.n != 2) throw Error(ErrorKind::DimensionMismatch, "YY gadget acts on two qubits");
  const int nt = 3, w = 2;
  double s = sgn(alpha);
  double kappa = std::pow(std::abs(alpha) * delta * delta * delta / 4, 0.25);

  GadgetRealization g;
  g.n_system = 2;
  g.slack = w;
  g.delta = delta;
  g.alpha = alpha;
  g.target = OperatorSum(2);
  if (H_else.n) g.target += H_else;
  g.target.add(alpha, "YY");
  g.target.merge(1e-15);

  OperatorSum z_sum(nt), x_mix(nt);
  z_sum.add(kappa, "ZII").add(kappa, "IZI");
  x_mix.add(kappa, "XII").add(-s * kappa, "IXI");

  g.V = OperatorSum(nt);
  if (H_else.n) g.V += H_else.embed(nt, 0);
  g.V += z_sum.multiply(slack_projector(nt, w, 1));
  g.V += x_mix.multiply(slack_single(nt, w, 'X'));
  double c1 = 2 * kappa * kappa / delta;
  g.V += slack_projector(nt, w, 0) * c1;
  g.V.add(-s * c1, "XXI");
  g.V.add(-4 * std::pow(kappa, 4) / std::pow(delta, 3), "ZZI");
  finish(g, H_else.n ? dense_norm(H_else) : 0.0, epsilon);
  return g;
}

std::vector<double> z_grid(double z_max, int points) {
  std::vector<double> zs;
  if (points < 2) return {0.0};
  for (int i = 0; i < points; ++i) zs.push_back(-z_max + 2 * z_max * i / (points - 1));
  return zs;
}

SelfEnergy self_energy(const GadgetRealization &g, double z, int order) {
  if (std::abs(z) >= g.delta / 2) throw Error(ErrorKind::ZNearPole, "|z| must stay below delta/2");
  int nt = g.n_system + 1;
  std::vector<Eigen::Index> lo, hi;
  block_indices(nt, lo, hi);
  Matrix h = realize_dense(g.total());
  Matrix v = realize_dense(g.V);
  Matrix h_lo = block(h, lo, lo), h_lohi = block(h, lo, hi), h_hi = block(h, hi, hi);
  auto dim_lo = static_cast<Eigen::Index>(lo.size()), dim_hi = static_cast<Eigen::Index>(hi.size());

  RVector hi_spec = eigenvalues(h_hi);
  double dist = (hi_spec.array() - z).abs().minCoeff();
  if (dist < 1e-9 * std::max(1.0, g.delta)) throw Error(ErrorKind::ZNearPole, "z hits the excited block spectrum");

  SelfEnergy out;
  out.z = z;
  out.order = order;
  Matrix zh = z * Matrix::Identity(dim_hi, dim_hi) - h_hi;
  out.exact = h_lo + h_lohi * zh.partialPivLu().solve(h_lohi.adjoint());

  // Resolvent route; at z on the spectrum of H~ the Schur value stands in.
  RVector full = eigenvalues(h);
  if ((full.array() - z).abs().minCoeff() > 1e-8) {
    Matrix G = (z * Matrix::Identity(h.rows(), h.cols()) - h).inverse();
    Matrix g_lo = block(G, lo, lo);
    Eigen::JacobiSVD<Matrix> svd(g_lo);
    double smin = svd.singularValues().minCoeff();
    if (smin < 1e-13 * svd.singularValues().maxCoeff()) {
      throw Error(ErrorKind::SingularProjection, "projected resolvent is singular");
    }
    out.exact_resolvent = z * Matrix::Identity(dim_lo, dim_lo) - g_lo.inverse();
  } else {
    out.exact_resolvent = out.exact;
  }

  Matrix v_lo = block(v, lo, lo), v_lohi = block(v, lo, hi), v_hi = block(v, hi, hi);
  out.series = v_lo;
  Matrix chain = v_lohi;
  double denom = z - g.delta;
  for (int j = 0; j + 2 <= order; ++j) {
    out.series += chain * v_lohi.adjoint() / std::pow(denom, j + 1);
    chain = chain * v_hi;
  }
  return out;
}

GadgetReport verify_gadget(const GadgetRealization &g, double epsilon, const std::vector<double> &zs) {
  if (g.n_system + 1 > kDenseLimit) throw Error(ErrorKind::DimensionTooLarge, "gadget too large for dense checks");
  GadgetReport r;
  r.hypothesis_ok = g.hypothesis_ok;
  r.max_spectral_error = max_spectral_error(g, &r.spectral_errors, &r.max_leakage);
  Matrix heff = realize_dense(g.target);
  for (double z : zs) {
    if (std::abs(z) >= g.delta / 2) continue;
    SelfEnergy se = self_energy(g, z, 0);
    r.z_grid.push_back(z);
    double e = operator_norm(Matrix(se.exact - heff));
    r.self_energy_error.push_back(e);
    r.sup_self_energy_error = std::max(r.sup_self_energy_error, e);
  }
  r.pass = r.max_spectral_error <= epsilon;
  return r;
}

GadgetReport verify_gadget(const GadgetRealization &g, double epsilon) {
  return verify_gadget(g, epsilon, z_grid(g.z_max));
}

DeltaSearch minimal_delta_search(const GadgetSpec &spec, GadgetBuilder builder) {
  DeltaSearch out;
  double eps = spec.epsilon;
  auto build = [&](double d) {
    return builder == GadgetBuilder::Subdivision ? subdivision_gadget(spec, d)
                                                 : yy_gadget(spec.alpha, spec.H_else, d, eps);
  };
  std::vector<std::pair<double, double>> samples;
  auto err = [&](double d) {
    double e = max_spectral_error(build(d));
    samples.emplace_back(d, e);
    ++out.iterations;
    return e;
  };

  double hi;
  if (builder == GadgetBuilder::Subdivision) {
    check_spec(spec);
    double norm_else = spec.H_else.n ? dense_norm(spec.H_else) : 0.0;
    out.analytic = subdivision_delta(spec.alpha, eps, norm_else);
    hi = out.analytic;
    if (err(hi) > eps) throw Error(ErrorKind::NoBracket, "analytic delta fails verification");
  } else {
    if (spec.alpha == 0.0) throw Error(ErrorKind::ZeroCoupling, "target coupling alpha is zero");
    hi = 1.0;
    while (err(hi) > eps) {
      hi *= 2;
      if (hi > 1e14) throw Error(ErrorKind::NoBracket, "no passing delta below 1e14");
    }
  }
  double lo = hi / 2;
  while (err(lo) <= eps) {
    hi = lo;
    lo /= 2;
    if (lo < 1e-12) {
      out.delta_min = hi;
      return out;
    }
  }
  while ((hi - lo) / hi > 1e-4) {
    double mid = 0.5 * (lo + hi);
    (err(mid) <= eps ? hi : lo) = mid;
  }
  out.delta_min = hi;

  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].second > samples[i - 1].second + 1e-12) out.monotone = false;
  }
  return out;
}

double series_remainder_bound(const GadgetRealization &g, double z, int order) {
  int nt = g.n_system + 1;
  std::vector<Eigen::Index> lo, hi;
  block_indices(nt, lo, hi);
  Matrix v = realize_dense(g.V);
  double c = operator_norm(block(v, lo, hi));
  double vp = operator_norm(block(v, hi, hi));
  double d = std::abs(z - g.delta);
  if (vp >= d) return std::numeric_limits<double>::infinity();
  int first = std::max(order - 1, 0);  // first omitted power of V_+
  return c * c * std::pow(vp / d, first) / (d - vp);
}

double loglog_slope(const std::vector<double> &eps, const std::vector<double> &deltas) {
  if (eps.size() != deltas.size() || eps.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "slope needs at least two matching points");
  }
  double n = static_cast<double>(eps.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double x = std::log(1.0 / eps[i]), y = std::log(deltas[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GadgetSpec zz_spec(double alpha, double epsilon) {
  GadgetSpec s;
  s.alpha = alpha;
  s.epsilon = epsilon;
  s.A = OperatorSum(2);
  s.A.add(1.0, "ZI");
  s.B = OperatorSum(2);
  s.B.add(1.0, "IZ");
  s.H_else = OperatorSum(2);
  return s;
}

GadgetSpec yy_spec(double alpha, double epsilon) {
  GadgetSpec s;
  s.alpha = alpha;
  s.epsilon = epsilon;
  s.A = OperatorSum(2);
  s.A.add(1.0, "YI");
  s.B = OperatorSum(2);
  s.B.add(1.0, "IY");
  s.H_else = OperatorSum(2);
  return s;
}

}  // namespace hamlab
