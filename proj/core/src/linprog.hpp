// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
//
// Internal exact linear programming: dense two-phase simplex with Bland's
// rule over an ordered field (instantiated with Rational and QSqrt2). Bland's
// rule is slow but cycle-free and, decisively here, deterministic: the
// is_reeb_vector witness is part of the library's reproducibility contract.
#pragma once

#include <stdexcept>
#include <vector>

namespace reebindex::detail {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <class F>
struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<F> x;  // primal solution, valid when status == kOptimal
  F objective{};
};

/// Maximize c.x subject to A x = b, x >= 0.
template <class F>
LpResult<F> lp_maximize(std::vector<std::vector<F>> A, std::vector<F> b,
                        const std::vector<F>& c) {
  const int m = static_cast<int>(A.size());
  const int n = m > 0 ? static_cast<int>(A[0].size()) : static_cast<int>(c.size());
  if (static_cast<int>(c.size()) != n)
    throw std::invalid_argument("lp_maximize: objective length mismatch");
  for (int i = 0; i < m; ++i)
    if (static_cast<int>(A[i].size()) != n)
      throw std::invalid_argument("lp_maximize: ragged constraint matrix");

  // normalize to b >= 0 so the artificial basis is feasible
  for (int i = 0; i < m; ++i)
    if (b[i] < F(0)) {
      for (auto& v : A[i]) v = -v;
      b[i] = -b[i];
    }

  // tableau over structural + artificial columns
  const int total = n + m;
  std::vector<std::vector<F>> T(m, std::vector<F>(total + 1, F(0)));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = F(1);
    T[i][total] = b[i];
    basis[i] = n + i;
  }

  auto pivot = [&](int row, int col) {
    const F p = T[row][col];
    for (auto& v : T[row]) v = v / p;
    for (int i = 0; i < m; ++i) {
      if (i == row || T[i][col] == F(0)) continue;
      const F f = T[i][col];
      for (int j = 0; j <= total; ++j) T[i][j] = T[i][j] - f * T[row][j];
    }
    basis[row] = col;
  };

  // one simplex phase: maximize obj over the allowed columns, Bland's rule
  auto run = [&](const std::vector<F>& obj, int ncols) -> bool {
    while (true) {
      // reduced costs via the basis multipliers
      std::vector<F> y(m, F(0));
      for (int i = 0; i < m; ++i) y[i] = obj[basis[i]];
      int enter = -1;
      for (int j = 0; j < ncols && enter < 0; ++j) {
        F red = obj[j];
        for (int i = 0; i < m; ++i) red = red - y[i] * T[i][j];
        if (red > F(0)) enter = j;  // Bland: first improving index
      }
      if (enter < 0) return true;  // optimal
      int leave = -1;
      for (int i = 0; i < m; ++i) {
        if (T[i][enter] <= F(0)) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        const F lhs = T[i][total] * T[leave][enter];
        const F rhs = T[leave][total] * T[i][enter];
        if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
      }
      if (leave < 0) return false;  // unbounded ray
      pivot(leave, enter);
    }
  };

  // phase 1: drive the artificials to zero
  std::vector<F> phase1(total, F(0));
  for (int j = n; j < total; ++j) phase1[j] = F(-1);
  run(phase1, total);
  F art_sum(0);
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) art_sum = art_sum + T[i][total];
  LpResult<F> out;
  if (art_sum != F(0)) return out;  // infeasible

  // kick lingering zero-valued artificials out of the basis
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n && col < 0; ++j)
      if (T[i][j] != F(0)) col = j;
    if (col >= 0) pivot(i, col);
    // else the row is identically zero over structurals: redundant equality
  }

  // phase 2 over structural columns only
  std::vector<F> phase2(total, F(0));
  for (int j = 0; j < n; ++j) phase2[j] = c[j];
  if (!run(phase2, n)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  out.status = LpStatus::kOptimal;
  out.x.assign(n, F(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) out.x[basis[i]] = T[i][total];
  out.objective = F(0);
  for (int j = 0; j < n; ++j) out.objective = out.objective + c[j] * out.x[j];
  return out;
}

}  // namespace reebindex::detail
