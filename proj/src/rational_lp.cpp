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

#include "hamlab/rational_lp.hpp"

#include "hamlab/error.hpp"

namespace hamlab {

std::string to_string(const Rational &r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string &s) {
  using boost::multiprecision::cpp_int;
  // Decimal digits only; leading zeros are stripped so they never read as octal.
  auto integer = [&](std::string d) {
    bool neg = !d.empty() && d[0] == '-';
    if (!d.empty() && (d[0] == '-' || d[0] == '+')) d.erase(0, 1);
    if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(s);
    d.erase(0, std::min(d.find_first_not_of('0'), d.size() - 1));
    cpp_int v(d);
    return neg ? cpp_int(-v) : v;
  };
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      auto dot = s.find('.');
      if (dot == std::string::npos) return Rational(integer(s));
      std::string frac = s.substr(dot + 1);
      std::string whole = s.substr(0, dot);
      bool neg = !whole.empty() && whole[0] == '-';
      if (whole.empty() || whole == "-" || whole == "+") whole += "0";
      cpp_int den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      cpp_int f = frac.empty() ? cpp_int(0) : integer(frac);
      cpp_int w = integer(whole);
      cpp_int num = (neg ? cpp_int(-w) : w) * den + f;
      return Rational(neg ? cpp_int(-num) : num, den);
    }
    return Rational(integer(s.substr(0, slash)), integer(s.substr(slash + 1)));
  } catch (const std::exception &) {
    throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  }
}

double to_double(const Rational &r) { return r.convert_to<double>(); }

namespace {

// Phase-1 simplex on A x = b, x >= 0 (b >= 0 enforced by caller).
// Returns the primal point when the artificial objective reaches zero.
bool phase_one(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::size_t ncols,
               std::vector<Rational> &x) {
  std::size_t m = a.size();
  std::size_t total = ncols + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) t[i][j] = a[i][j];
    t[i][ncols + i] = 1;
    t[i][total] = b[i];
    basis[i] = ncols + i;
  }
  // Reduced costs of minimizing the artificial sum.
  std::vector<Rational> cost(total + 1);
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
  }
  for (std::size_t i = 0; i < m; ++i) cost[total] -= t[i][total];

  while (true) {
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == total) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > 0) {
        Rational ratio = t[i][total] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase 1
    Rational piv = t[leave][enter];
    for (auto &v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j <= total; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (cost[total] != 0) return false;  // artificial sum stays positive
  x.assign(ncols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < ncols) x[basis[i]] = t[i][total];
  }
  return true;
}

// Solves the general system by splitting free variables and adding surplus.
bool solve_general(const LinearSystem &sys, std::vector<Rational> &x) {
  std::size_t nv = static_cast<std::size_t>(sys.num_vars);
  std::size_t nge = sys.ge_rows.size();
  std::size_t ncols = 2 * nv + nge;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  auto push = [&](const std::vector<Rational> &row, const Rational &rhs, long surplus) {
    std::vector<Rational> r(ncols);
    for (std::size_t j = 0; j < nv; ++j) {
      r[j] = row[j];
      r[nv + j] = -row[j];
    }
    if (surplus >= 0) r[2 * nv + static_cast<std::size_t>(surplus)] = -1;
    Rational rr = rhs;
    if (rr < 0) {
      for (auto &v : r) v = -v;
      rr = -rr;
    }
    a.push_back(std::move(r));
    b.push_back(rr);
  };
  for (std::size_t i = 0; i < sys.eq_rows.size(); ++i) push(sys.eq_rows[i], sys.eq_rhs[i], -1);
  for (std::size_t i = 0; i < nge; ++i) push(sys.ge_rows[i], sys.ge_rhs[i], static_cast<long>(i));
  std::vector<Rational> z;
  if (!phase_one(a, b, ncols, z)) return false;
  x.assign(nv, Rational(0));
  for (std::size_t j = 0; j < nv; ++j) x[j] = z[j] - z[nv + j];
  return true;
}

}  // namespace

bool satisfies(const LinearSystem &sys, const std::vector<Rational> &x) {
  auto dot = [&](const std::vector<Rational> &row) {
    Rational s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    return s;
  };
  for (std::size_t i = 0; i < sys.eq_rows.size(); ++i) {
    if (dot(sys.eq_rows[i]) != sys.eq_rhs[i]) return false;
  }
  for (std::size_t i = 0; i < sys.ge_rows.size(); ++i) {
    if (dot(sys.ge_rows[i]) < sys.ge_rhs[i]) return false;
  }
  return true;
}

bool verify_certificate(const LinearSystem &sys, const FarkasCertificate &c) {
  if (c.y_eq.size() != sys.eq_rows.size() || c.y_ge.size() != sys.ge_rows.size()) return false;
  for (const auto &y : c.y_ge) {
    if (y < 0) return false;
  }
  std::size_t nv = static_cast<std::size_t>(sys.num_vars);
  for (std::size_t j = 0; j < nv; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < sys.eq_rows.size(); ++i) s += c.y_eq[i] * sys.eq_rows[i][j];
    for (std::size_t i = 0; i < sys.ge_rows.size(); ++i) s += c.y_ge[i] * sys.ge_rows[i][j];
    if (s != 0) return false;
  }
  Rational rhs = 0;
  for (std::size_t i = 0; i < sys.eq_rows.size(); ++i) rhs += c.y_eq[i] * sys.eq_rhs[i];
  for (std::size_t i = 0; i < sys.ge_rows.size(); ++i) rhs += c.y_ge[i] * sys.ge_rhs[i];
  return rhs > 0;
}

FeasibilityResult solve_feasibility(const LinearSystem &sys) {
  FeasibilityResult res;
  if (solve_general(sys, res.x)) {
    res.feasible = true;
    return res;
  }
  // Alternative system: unknowns (y_eq free, y_ge >= 0) with
  // A^T y = 0 and b.y = 1; it is feasible exactly when sys is not.
  std::size_t me = sys.eq_rows.size(), mg = sys.ge_rows.size();
  std::size_t nv = static_cast<std::size_t>(sys.num_vars);
  LinearSystem alt;
  alt.num_vars = static_cast<int>(me + mg);
  for (std::size_t j = 0; j < nv; ++j) {
    std::vector<Rational> row(me + mg);
    for (std::size_t i = 0; i < me; ++i) row[i] = sys.eq_rows[i][j];
    for (std::size_t i = 0; i < mg; ++i) row[me + i] = sys.ge_rows[i][j];
    alt.eq_rows.push_back(row);
    alt.eq_rhs.emplace_back(0);
  }
  std::vector<Rational> brow(me + mg);
  for (std::size_t i = 0; i < me; ++i) brow[i] = sys.eq_rhs[i];
  for (std::size_t i = 0; i < mg; ++i) brow[me + i] = sys.ge_rhs[i];
  alt.eq_rows.push_back(brow);
  alt.eq_rhs.emplace_back(1);
  for (std::size_t i = 0; i < mg; ++i) {
    std::vector<Rational> row(me + mg);
    row[me + i] = 1;
    alt.ge_rows.push_back(row);
    alt.ge_rhs.emplace_back(0);
  }
  std::vector<Rational> y;
  if (!solve_general(alt, y)) {
    throw Error(ErrorKind::InvalidArgument, "neither system nor its Farkas alternative is feasible");
  }
  res.certificate.y_eq.assign(y.begin(), y.begin() + static_cast<long>(me));
  res.certificate.y_ge.assign(y.begin() + static_cast<long>(me), y.end());
  return res;
}

}  // namespace hamlab
