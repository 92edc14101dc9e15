// Copyright 2026 The simplest-scenario Authors
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

#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "simplest/errors.hpp"
#include "simplest/rational.hpp"

namespace simplest::lp {

/// Equality-form program: minimize cost.x subject to rows.x = rhs, x >= 0.
struct Problem {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_cols() const { return cost.size(); }
};

enum class Status { optimal, infeasible, unbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

/// Primal optimum with a dual certificate, or an infeasibility certificate.
/// optimal: x >= 0, rows.x = rhs, cost.x = objective; dual y satisfies
///   y.rows_col(j) <= cost[j] for every column and y.rhs = objective.
/// infeasible: dual y satisfies y.rows_col(j) <= 0 for every column and
///   y.rhs > 0 (no nonnegative solution can exist).
struct Solution {
  Status status = Status::infeasible;
  Rational objective;
  std::vector<Rational> x;
  std::vector<Rational> dual;
};

namespace detail {

/// Tableau simplex state over the columns [original | artificial | rhs].
/// The cost row z holds reduced costs, z.back() = -(current objective).
struct Tableau {
  std::vector<std::vector<Rational>> t;
  std::vector<Rational> z;
  std::vector<int> basis;
  std::size_t n = 0;  // original columns; artificials are [n, n+m)

  void pivot(std::size_t r, std::size_t e) {
    Rational piv = t[r][e];
    for (Rational& v : t[r]) v /= piv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || t[i][e] == 0) continue;
      Rational f = t[i][e];
      for (std::size_t j = 0; j < t[i].size(); ++j) t[i][j] -= f * t[r][j];
    }
    if (z[e] != 0) {
      Rational f = z[e];
      for (std::size_t j = 0; j < z.size(); ++j) z[j] -= f * t[r][j];
    }
    basis[r] = static_cast<int>(e);
  }

  /// Runs the simplex over the original columns only (artificials never
  /// enter). Dantzig rule, falling back to Bland's rule after a run of
  /// degenerate pivots to rule out cycling. Returns false on unboundedness.
  bool minimize() {
    const std::size_t m = t.size();
    int degenerate_streak = 0;
    for (long iter = 0; iter < 100000; ++iter) {
      std::size_t enter = n;
      if (degenerate_streak < 50) {
        for (std::size_t j = 0; j < n; ++j)
          if (z[j] < 0 && (enter == n || z[j] < z[enter])) enter = j;
      } else {
        for (std::size_t j = 0; j < n; ++j)
          if (z[j] < 0) { enter = j; break; }
      }
      if (enter == n) return true;

      std::size_t row = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i].back() / t[i][enter];
        if (row == m || ratio < best ||
            (ratio == best && basis[i] < basis[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row == m) return false;
      degenerate_streak = (t[row].back() == 0) ? degenerate_streak + 1 : 0;
      pivot(row, enter);
    }
    fail(ErrorCode::DomainError, "simplex iteration limit exceeded");
  }
};

}  // namespace detail

inline Solution solve(const Problem& p) {
  const std::size_t m = p.num_rows();
  const std::size_t n = p.num_cols();
  for (const auto& row : p.rows)
    if (row.size() != n)
      fail(ErrorCode::DomainError, "LP row width does not match cost vector");
  if (p.rhs.size() != m)
    fail(ErrorCode::DomainError, "LP rhs length does not match row count");

  detail::Tableau tb;
  tb.n = n;
  tb.basis.resize(m);
  tb.t.assign(m, std::vector<Rational>(n + m + 1));
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.rhs[i] < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j)
      tb.t[i][j] = sign[i] < 0 ? -p.rows[i][j] : p.rows[i][j];
    tb.t[i][n + i] = 1;
    tb.t[i].back() = sign[i] < 0 ? -p.rhs[i] : p.rhs[i];
    tb.basis[i] = static_cast<int>(n + i);
  }

  // Phase 1: minimize the sum of artificials. Reduced costs follow from
  // cost 0 on originals, 1 on artificials, with all artificials basic.
  tb.z.assign(n + m + 1, Rational(0));
  for (std::size_t j = 0; j <= n + m; ++j) {
    Rational col_sum = 0;
    for (std::size_t i = 0; i < m; ++i) col_sum += tb.t[i][j];
    tb.z[j] = (j >= n && j < n + m ? Rational(1) : Rational(0)) - col_sum;
  }
  if (!tb.minimize())
    fail(ErrorCode::DomainError, "phase-1 LP reported unbounded");

  Solution sol;
  if (tb.z.back() != 0) {  // positive artificial mass: no feasible point
    sol.status = Status::infeasible;
    sol.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      sol.dual[i] = sign[i] * (Rational(1) - tb.z[n + i]);
    return sol;
  }

  // Drive basic artificials out on their zero-valued rows; rows with no
  // original pivot are redundant and stay inert (all original entries 0).
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < static_cast<int>(n)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (tb.t[i][j] != 0) {
        tb.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2: rebuild reduced costs for the real objective.
  tb.z.assign(n + m + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) tb.z[j] = p.cost[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] >= static_cast<int>(n)) continue;  // artificial: cost 0
    const Rational& cb = p.cost[tb.basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= n + m; ++j) tb.z[j] -= cb * tb.t[i][j];
  }
  if (!tb.minimize()) {
    sol.status = Status::unbounded;
    return sol;
  }

  sol.status = Status::optimal;
  sol.objective = -tb.z.back();
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] < static_cast<int>(n)) sol.x[tb.basis[i]] = tb.t[i].back();
  sol.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.dual[i] = sign[i] * (-tb.z[n + i]);
  return sol;
}

/// Exact recheck of a solution against the original problem data. Every
/// comparison is an equality or exact inequality; no tolerances.
inline bool verify(const Problem& p, const Solution& sol) {
  const std::size_t m = p.num_rows();
  const std::size_t n = p.num_cols();
  if (sol.dual.size() != m) return false;
  auto dual_dot_col = [&](std::size_t j) {
    Rational v = 0;
    for (std::size_t i = 0; i < m; ++i) v += sol.dual[i] * p.rows[i][j];
    return v;
  };
  Rational dual_obj = 0;
  for (std::size_t i = 0; i < m; ++i) dual_obj += sol.dual[i] * p.rhs[i];

  if (sol.status == Status::infeasible) {
    for (std::size_t j = 0; j < n; ++j)
      if (dual_dot_col(j) > 0) return false;
    return dual_obj > 0;
  }
  if (sol.status != Status::optimal || sol.x.size() != n) return false;
  Rational primal_obj = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sol.x[j] < 0) return false;
    primal_obj += p.cost[j] * sol.x[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += p.rows[i][j] * sol.x[j];
    if (lhs != p.rhs[i]) return false;
  }
  if (primal_obj != sol.objective) return false;
  for (std::size_t j = 0; j < n; ++j)
    if (dual_dot_col(j) > p.cost[j]) return false;
  return dual_obj == sol.objective;
}

/// Plain-text audit dump: one line per row as exact fractions.
inline std::string dump(const Problem& p) {
  std::ostringstream os;
  os << "lp rows=" << p.num_rows() << " cols=" << p.num_cols() << "\n";
  os << "minimize:";
  for (const Rational& c : p.cost) os << ' ' << c.str();
  os << "\n";
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    os << "row " << i << ":";
    for (const Rational& a : p.rows[i]) os << ' ' << a.str();
    os << " = " << p.rhs[i].str() << "\n";
  }
  return os.str();
}

}  // namespace simplest::lp
