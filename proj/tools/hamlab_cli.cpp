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

// Command-line front end: problem ingestion, gadget checks, variational runs,
// walks and SAT sweeps. Exit codes: 0 ok, 1 verification failure, 2 usage or
// parse error, 3 resource limit.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hamlab/boolean.hpp"
#include "hamlab/clock.hpp"
#include "hamlab/error.hpp"
#include "hamlab/gadgets.hpp"
#include "hamlab/parallel.hpp"
#include "hamlab/variational.hpp"
#include "hamlab/walks.hpp"
#include "json.hpp"

namespace {

using namespace hamlab;

constexpr const char *kVersion = "hamlab 0.1.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  std::ostringstream o;
  o << std::setprecision(12) << v;
  return o.str();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// "a:b:step" inclusive of b (within step/1e6), or a single value.
std::vector<double> parse_range(const std::string &text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ':');) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error &) {
      throw UsageError("bad range '" + text + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) throw UsageError("range must be a:b:step with step > 0");
  std::vector<double> out;
  auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-6));
  for (long k = 0; k <= count; ++k) out.push_back(parts[0] + static_cast<double>(k) * parts[2]);
  return out;
}

/// Collects parsed flags and writes outputs plus their manifest.
class Run {
 public:
  Run(std::string name, const CLI::App *sub) : name_(std::move(name)) {
    manifest_["subcommand"] = name_;
    manifest_["version"] = kVersion;
    nlohmann::json flags = nlohmann::json::object();
    for (const CLI::Option *o : sub->get_options()) {
      if (o->count() == 0 || o->get_name() == "--help") continue;
      std::vector<std::string> r = o->results();
      flags[o->get_name()] = r.size() == 1 ? nlohmann::json(r[0]) : nlohmann::json(r);
    }
    manifest_["flags"] = flags;
    manifest_["inputs"] = nlohmann::json::array();
    manifest_["outputs"] = nlohmann::json::array();
  }

  void seed(std::uint64_t s) { manifest_["seed"] = s; }
  void input(const std::string &path) { manifest_["inputs"].push_back(path); }

  /// CSV output: manifest comment line, header, rows.
  void csv(const std::string &out, const std::string &header, const std::vector<std::string> &rows) {
    std::ostringstream body;
    body << "# manifest: " << manifest_json(out) << "\n" << header << "\n";
    for (const auto &r : rows) body << r << "\n";
    emit(out, body.str());
  }

  void text(const std::string &out, const std::string &content) { emit(out, content); }

 private:
  std::string manifest_json(const std::string &out) {
    nlohmann::json m = manifest_;
    if (!out.empty()) m["outputs"].push_back(out);
    return m.dump();
  }

  void emit(const std::string &out, const std::string &content) {
    if (out.empty()) {
      std::cout << content;
      return;
    }
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write '" + out + "'");
    f << content;
    std::ofstream mf(out + ".manifest.json");
    mf << manifest_json(out) << "\n";
  }

  std::string name_;
  nlohmann::json manifest_;
};

std::string join(const std::vector<double> &v, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + num(v[i]);
  return s;
}

// ---------------------------------------------------------------- embed

/// "c1 W1; c2 W2; ..." on one line.
std::string compact_terms(const OperatorSum &h) {
  std::string s;
  for (const auto &t : h.terms) s += (s.empty() ? "" : "; ") + num(t.c) + " " + t.p.word();
  return s;
}

struct EmbedOpts {
  std::string dimacs, formula, out, summary;
  int n = -1;
  bool kernel = false;
};

int cmd_embed(const EmbedOpts &o, const CLI::App *sub) {
  if (o.dimacs.empty() == o.formula.empty()) throw UsageError("give exactly one of --dimacs or --formula");
  Run run("embed", sub);
  OperatorSum h;
  if (!o.dimacs.empty()) {
    run.input(o.dimacs);
    h = cnf_to_hamiltonian(parse_dimacs(read_file(o.dimacs)));
  } else {
    run.input(o.formula);
    Formula f = formula_from_json(read_file(o.formula));
    int n = o.n >= 0 ? o.n : f->max_var() + 1;
    h = o.kernel ? kernel_embed(f, n) : embed_formula(f, n);
  }
  h.merge(1e-14);
  if (!o.out.empty()) run.text(o.out, to_json(h) + "\n");
  std::string ground_col = "", degeneracy_col = "";
  if (h.n <= kDenseLimit) {
    GroundResult g = ground(h);
    ground_col = num(std::abs(g.energy) < 1e-12 ? 0.0 : g.energy);
    degeneracy_col = std::to_string(g.degeneracy);
  }
  std::string row = std::to_string(h.n) + "," + std::to_string(h.cardinality()) + "," + ground_col + "," + degeneracy_col +
                    "," + compact_terms(h);
  run.csv(o.summary, "n,cardinality,ground_energy,degeneracy,operator", {row});
  return kOk;
}

// ---------------------------------------------------------------- gadget

struct GadgetOpts {
  double alpha = 1.0, eps = 0.05, delta = 0.0;
  std::string builder = "subdivision", out;
  bool search = false;
};

int cmd_gadget(const GadgetOpts &o, const CLI::App *sub) {
  Run run("gadget", sub);
  GadgetBuilder b;
  if (o.builder == "subdivision") {
    b = GadgetBuilder::Subdivision;
  } else if (o.builder == "yy") {
    b = GadgetBuilder::YY;
  } else {
    throw UsageError("--builder must be subdivision or yy");
  }
  if (!(o.eps > 0)) throw UsageError("--eps must be positive");
  GadgetSpec spec = b == GadgetBuilder::Subdivision ? zz_spec(o.alpha, o.eps) : yy_spec(o.alpha, o.eps);
  check_spec(spec);
  double delta = o.delta;
  std::string extra_header, extra;
  if (o.search) {
    DeltaSearch s = minimal_delta_search(spec, b);
    delta = s.delta_min;
    extra_header = ",analytic_delta,iterations,monotone";
    extra = "," + num(s.analytic) + "," + std::to_string(s.iterations) + "," + (s.monotone ? "1" : "0");
  } else if (delta <= 0) {
    if (b == GadgetBuilder::YY) throw UsageError("the yy builder needs --delta or --search-min-delta");
    delta = subdivision_delta(o.alpha, o.eps, 0.0);
  }
  GadgetRealization g = b == GadgetBuilder::Subdivision ? subdivision_gadget(spec, delta)
                                                         : yy_gadget(o.alpha, spec.H_else, delta, o.eps);
  GadgetReport r = verify_gadget(g, o.eps);
  std::string row = num(o.alpha) + "," + num(o.eps) + "," + num(delta) + "," + num(r.max_spectral_error) + "," +
                    num(r.sup_self_energy_error) + "," + (r.pass ? "1" : "0") + extra;
  run.csv(o.out, "alpha,epsilon,delta,max_spectral_error,sup_self_energy_error,pass" + extra_header, {row});
  return r.pass ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- variational

struct VarOpts {
  std::string out, dimacs, mode = "two_level", circuit, encoding = "binary";
  int n = 3, p = 1, clauses = 0, restarts = 16, instances = 20, M = 0, max_evals = 4000;
  std::vector<int> ps;
  double alpha_max = 10.0, alpha_step = 1.0, J = 1.0, K = 1.0;
  std::uint64_t seed = 1, input = 0;
};

OptimizerConfig optimizer(const VarOpts &o, int threads) {
  OptimizerConfig cfg;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.threads = threads;
  cfg.max_evaluations = o.max_evals;
  if (cfg.restarts < 1) throw UsageError("--restarts must be positive");
  return cfg;
}

void warn_budget(bool exceeded) {
  if (exceeded) std::cerr << "warning: BudgetExceeded: some restarts hit the evaluation budget\n";
}

int cmd_qaoa(const VarOpts &o, const CLI::App *sub, int threads) {
  Run run("variational qaoa", sub);
  run.seed(o.seed);
  CnfInstance inst;
  if (!o.dimacs.empty()) {
    run.input(o.dimacs);
    inst = parse_dimacs(read_file(o.dimacs));
  } else {
    if (o.clauses < 1) throw UsageError("give --dimacs or --clauses for a random instance");
    std::mt19937_64 rng(o.seed);
    inst = random_ksat(o.n, o.clauses, 3, rng);
  }
  DeficitResult d = reachability_deficit(inst, o.p, optimizer(o, threads));
  warn_budget(d.budget_exceeded);
  std::string row = std::to_string(inst.n) + "," + std::to_string(o.p) + "," + num(d.qaoa_energy) + "," +
                    num(d.ground_energy) + "," + num(d.f) + "," + join(d.angles);
  run.csv(o.out, "n,p,qaoa_energy,ground_energy,f,angles", {row});
  return kOk;
}

int cmd_grover(const VarOpts &o, const CLI::App *sub, int threads) {
  Run run("variational grover", sub);
  run.seed(o.seed);
  GroverResult r = variational_grover(o.n, o.p, grover_mode_from_string(o.mode), optimizer(o, threads));
  warn_budget(r.budget_exceeded);
  std::string row = std::to_string(1ULL << o.n) + "," + std::to_string(o.p) + "," + to_string(r.mode) + "," +
                    num(r.improvement_pct) + "," + num(r.probability) + "," + num(r.grover_probability) + "," +
                    num(r.angle);
  run.csv(o.out, "N,p,mode,improvement_pct,p_max,grover_probability,angle", {row});
  return kOk;
}

int cmd_deficit(const VarOpts &o, const CLI::App *sub, int threads) {
  Run run("variational deficit", sub);
  run.seed(o.seed);
  std::vector<int> ps = o.ps.empty() ? std::vector<int>{o.p} : o.ps;
  if (!(o.alpha_step > 0)) throw UsageError("--alpha-step must be positive");
  std::vector<double> alphas;
  for (double a = o.alpha_step; a <= o.alpha_max + 1e-9; a += o.alpha_step) alphas.push_back(a);
  OptimizerConfig cfg = optimizer(o, 1);
  std::size_t ni = static_cast<std::size_t>(o.instances);
  std::vector<std::string> rows;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (int p : ps) {
      std::vector<double> f(ni);
      std::vector<char> budget(ni, 0);
      parallel_for(ni, threads, [&](std::size_t i) {
        std::seed_seq ss{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(ai), static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(ss);
        int m = std::max(1, static_cast<int>(std::lround(alphas[ai] * o.n)));
        CnfInstance inst = random_ksat(o.n, m, 3, rng);
        DeficitResult d = reachability_deficit(inst, p, cfg);
        f[i] = d.f;
        budget[i] = d.budget_exceeded;
      });
      double mean = 0, var = 0;
      for (double v : f) mean += v;
      mean /= static_cast<double>(ni);
      for (double v : f) var += (v - mean) * (v - mean);
      double se = ni > 1 ? std::sqrt(var / static_cast<double>(ni - 1) / static_cast<double>(ni)) : 0.0;
      for (char b : budget) warn_budget(b);
      rows.push_back(num(alphas[ai]) + "," + std::to_string(p) + "," + num(mean) + "," + num(se) + "," +
                     std::to_string(ni));
    }
  }
  run.csv(o.out, "alpha,p,mean_f,stderr,seeds", rows);
  return kOk;
}

int cmd_clock(const VarOpts &o, const CLI::App *sub) {
  Run run("variational clock", sub);
  if (o.circuit.empty()) throw UsageError("--circuit is required");
  run.input(o.circuit);
  Circuit c = circuit_from_json(read_file(o.circuit));
  ClockEncoding enc = clock_encoding_from_string(o.encoding);
  OverlapReport ov = acceptance_overlap(c, o.M, enc, o.input);
  int L = static_cast<int>(c.gates.size()) + o.M;
  GapAnalysis g = gap_analysis(L, o.J, o.K);
  std::string card = "";
  if (c.n + clock_qubits(L, enc) <= kDenseLimit) {
    card = std::to_string(clock_hamiltonian(c, o.J, o.K, o.M, enc, o.input).total().cardinality());
  }
  std::string row = std::to_string(ov.L) + "," + std::to_string(o.M) + "," + to_string(enc) + "," + num(ov.measured) +
                    "," + num(ov.closed_form) + "," + num(g.gap_exact) + "," + num(g.gap_bound) + "," + card;
  run.csv(o.out, "L,M,encoding,overlap,overlap_closed_form,gap_exact,gap_bound,cardinality", {row});
  return kOk;
}

// ---------------------------------------------------------------- walk / sweep

struct WalkOpts {
  std::string graph, out, times, generator = "L";
  bool stationary = false, long_time = false, quantum = false, stochastic = false, entropy = false;
  int start = 0;
  double beta = 1.0;
};

int cmd_walk(const WalkOpts &o, const CLI::App *sub) {
  Run run("walk", sub);
  if (o.graph.empty()) throw UsageError("--graph is required");
  run.input(o.graph);
  std::string text = read_file(o.graph);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  Graph g = first != std::string::npos && text[first] == '{' ? graph_from_json(text) : graph_from_text(text);
  int actions = o.stationary + o.long_time + o.quantum + o.stochastic + o.entropy;
  if (actions != 1) throw UsageError("choose one of --stationary, --long-time, --quantum, --stochastic, --entropy");
  if (o.start < 0 || o.start >= g.n) throw UsageError("--start out of range");
  std::vector<std::string> rows;
  if (o.entropy) {
    rows.push_back(num(o.beta) + "," + num(spectral_entropy(graph_laplacian(g), o.beta)));
    run.csv(o.out, "beta,entropy", rows);
    return kOk;
  }
  WalkGenerators w = build_generators(g);
  if (o.stationary) {
    RVector pi = stationary_state(w);
    for (int i = 0; i < g.n; ++i) rows.push_back(std::to_string(i) + "," + num(pi[i]));
    run.csv(o.out, "node,pi", rows);
    return kOk;
  }
  Vector psi0 = Vector::Zero(g.n);
  psi0[o.start] = 1.0;
  if (o.long_time) {
    LongTimeAverage lt = long_time_average(w, psi0);
    for (int i = 0; i < g.n; ++i) {
      rows.push_back(std::to_string(i) + "," + num(lt.P[i]) + "," + num(lt.pi[i]) + "," + num(lt.Omega[i]) + "," +
                     num(lt.eta));
    }
    run.csv(o.out, "node,P,pi,Omega,eta", rows);
    return kOk;
  }
  const RMatrix *H = nullptr;
  if (o.generator == "L") {
    H = &w.L;
  } else if (o.generator == "Q") {
    H = &w.Q;
  } else if (o.generator == "S") {
    H = &w.S;
  } else {
    throw UsageError("--generator must be L, Q or S");
  }
  if (o.quantum && o.generator == "S") throw UsageError("S is not symmetric; use L or Q for quantum walks");
  std::string header = "t";
  for (int i = 0; i < g.n; ++i) header += ",p" + std::to_string(i);
  for (double t : parse_range(o.times.empty() ? "0:10:0.1" : o.times)) {
    RVector p = o.quantum ? quantum_probabilities(*H, psi0, t) : stochastic_evolve(*H, psi0.real(), t);
    std::string row = num(t);
    for (int i = 0; i < g.n; ++i) row += "," + num(p[i]);
    rows.push_back(row);
  }
  run.csv(o.out, header, rows);
  return kOk;
}

struct SweepOpts {
  int n = 16, instances = 200;
  std::string alpha = "0.5:8:0.25", out;
  std::vector<double> betas{1.0, 2.0, 3.0};
  std::uint64_t seed = 7;
};

int cmd_sweep(const SweepOpts &o, const CLI::App *sub, int threads) {
  Run run("sweep", sub);
  run.seed(o.seed);
  if (o.n > 24) throw Error(ErrorKind::TooManyVariables, "sweep limited to 24 variables");
  std::vector<SweepRow> rows = sat_sweep(o.n, parse_range(o.alpha), o.instances, o.betas, o.seed, threads);
  std::vector<std::string> lines;
  for (const auto &r : rows) {
    lines.push_back(num(r.alpha) + "," + num(r.beta) + "," + num(r.frac_sat) + "," + num(r.mean_p) + "," +
                    num(r.stderr_p) + "," + num(r.mean_lambda_min));
  }
  run.csv(o.out, "alpha,beta,frac_sat,mean_p,stderr_p,mean_lambda_min", lines);
  return kOk;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionTooLarge:
    case ErrorKind::DenseLimit:
    case ErrorKind::TooLarge:
    case ErrorKind::TooManyVariables:
    case ErrorKind::CardinalityBlowup: return kResource;
    case ErrorKind::NoBracket:
    case ErrorKind::BudgetExceeded: return kVerifyFailed;
    default: return kUsage;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hamiltonian construction, gadget verification and variational toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads (default: HAMLAB_THREADS or logical cores)")
      ->check(CLI::PositiveNumber);

  EmbedOpts eo;
  CLI::App *embed = app.add_subcommand("embed", "embed a CNF or Boolean formula as a diagonal Hamiltonian");
  embed->add_option("--dimacs", eo.dimacs, "DIMACS CNF input");
  embed->add_option("--formula", eo.formula, "formula JSON input");
  embed->add_option("--n", eo.n, "variable count for --formula (default: largest index + 1)");
  embed->add_flag("--kernel", eo.kernel, "kernel embedding: zero energy exactly on satisfying assignments");
  embed->add_option("--out", eo.out, "operator JSON output");
  embed->add_option("--summary", eo.summary, "summary CSV output (default: stdout)");

  GadgetOpts go;
  CLI::App *gadget = app.add_subcommand("gadget", "build and verify a perturbative gadget");
  gadget->add_option("--alpha", go.alpha, "target coupling");
  gadget->add_option("--eps", go.eps, "spectral tolerance");
  gadget->add_option("--builder", go.builder, "subdivision or yy");
  gadget->add_option("--delta", go.delta, "penalty gap (default: analytic value for subdivision)");
  gadget->add_flag("--search-min-delta", go.search, "bisect for the smallest passing gap");
  gadget->add_option("--out", go.out, "CSV output (default: stdout)");

  VarOpts vo;
  CLI::App *var = app.add_subcommand("variational", "variational and clock-construction runs");
  var->require_subcommand(1);
  auto common = [&](CLI::App *s) {
    s->add_option("--out", vo.out, "CSV output (default: stdout)");
    s->add_option("--seed", vo.seed, "RNG seed");
    s->add_option("--restarts", vo.restarts, "optimizer restarts");
    s->add_option("--max-evals", vo.max_evals, "evaluation budget per restart");
  };
  CLI::App *qaoa = var->add_subcommand("qaoa", "QAOA on a 3-SAT instance");
  common(qaoa);
  qaoa->add_option("--dimacs", vo.dimacs, "DIMACS CNF input");
  qaoa->add_option("--n", vo.n, "variables of a random instance");
  qaoa->add_option("--clauses", vo.clauses, "clauses of a random instance");
  qaoa->add_option("--p", vo.p, "circuit depth");
  CLI::App *grover = var->add_subcommand("grover", "variational search against plain Grover");
  common(grover);
  grover->add_option("--n", vo.n, "qubits");
  grover->add_option("--p", vo.p, "oracle calls");
  grover->add_option("--mode", vo.mode, "two_level, var_diffusion, restricted_diffusion or matched");
  CLI::App *deficit = var->add_subcommand("deficit", "reachability deficits against clause density");
  common(deficit);
  deficit->add_option("--n", vo.n, "variables");
  deficit->add_option("--alpha-max", vo.alpha_max, "largest clause density");
  deficit->add_option("--alpha-step", vo.alpha_step, "clause density step (grid starts at the step)");
  deficit->add_option("--p", vo.ps, "depths")->expected(1, -1);
  deficit->add_option("--instances", vo.instances, "instances per density")->check(CLI::PositiveNumber);
  CLI::App *clock = var->add_subcommand("clock", "clock Hamiltonian overlap and gap report");
  clock->add_option("--out", vo.out, "CSV output (default: stdout)");
  clock->add_option("--circuit", vo.circuit, "circuit JSON input");
  clock->add_option("--M", vo.M, "identity padding")->check(CLI::NonNegativeNumber);
  clock->add_option("--encoding", vo.encoding, "binary or unary");
  clock->add_option("--J", vo.J, "input penalty weight");
  clock->add_option("--K", vo.K, "propagation weight");
  clock->add_option("--input", vo.input, "input basis index");

  WalkOpts wo;
  CLI::App *walk = app.add_subcommand("walk", "graph walk generators and averages");
  walk->add_option("--graph", wo.graph, "graph as JSON edge list or 'i j w' text");
  walk->add_flag("--stationary", wo.stationary, "stationary state of the uniform escape walk");
  walk->add_flag("--long-time", wo.long_time, "long-time average of the quantum walk generated by Q");
  walk->add_flag("--quantum", wo.quantum, "quantum walk probabilities over --times");
  walk->add_flag("--stochastic", wo.stochastic, "stochastic walk probabilities over --times");
  walk->add_flag("--entropy", wo.entropy, "spectral entropy of the Laplacian at --beta");
  walk->add_option("--generator", wo.generator, "L, Q or S for time evolution");
  walk->add_option("--times", wo.times, "a:b:step (default 0:10:0.1)");
  walk->add_option("--start", wo.start, "start node");
  walk->add_option("--beta", wo.beta, "inverse temperature");
  walk->add_option("--out", wo.out, "CSV output (default: stdout)");

  SweepOpts so;
  CLI::App *sweep = app.add_subcommand("sweep", "random 3-SAT satisfiability and Gibbs occupancy sweep");
  sweep->add_option("--n", so.n, "variables");
  sweep->add_option("--alpha", so.alpha, "clause densities a:b:step");
  sweep->add_option("--beta", so.betas, "inverse temperatures")->expected(1, -1);
  sweep->add_option("--instances", so.instances, "instances per density")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", so.seed, "RNG seed");
  sweep->add_option("--out", so.out, "CSV output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*embed) return cmd_embed(eo, embed);
    if (*gadget) return cmd_gadget(go, gadget);
    if (*qaoa) return cmd_qaoa(vo, qaoa, threads);
    if (*grover) return cmd_grover(vo, grover, threads);
    if (*deficit) return cmd_deficit(vo, deficit, threads);
    if (*clock) return cmd_clock(vo, clock);
    if (*walk) return cmd_walk(wo, walk);
    if (*sweep) return cmd_sweep(so, sweep, threads);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::bad_alloc &) {
    std::cerr << "error: out of memory\n";
    return kResource;
  }
  return kUsage;
}
