// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#include "reebindex/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace reebindex {

namespace {

/// Floor division quotient, matching the convention of the classical
/// presentations (remainder has the sign of the divisor).
BigInt floor_div(const BigInt& x, const BigInt& y) {
  BigInt q, r;
  boost::multiprecision::divide_qr(x, y, q, r);
  if (r != 0 && ((r < 0) != (y < 0))) q -= 1;
  return q;
}

/// Extended gcd, (g, u, v) with u x + v y = g, by the textbook recursion.
std::tuple<BigInt, BigInt, BigInt> egcd(const BigInt& x, const BigInt& y) {
  if (y == 0) return {x, 1, 0};
  const BigInt q = floor_div(x, y);
  auto [g, u, v] = egcd(y, x - q * y);
  return {g, v, u - q * v};
}

/// Row-reduce in place; returns the pivot columns. Optionally carries an
/// augmented column (rhs) one past ncols.
std::vector<int> reduce(RatMat& m, int ncols) {
  std::vector<int> pivots;
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  for (int col = 0; col < ncols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    const Rational inv = m[rank][col];
    for (auto& x : m[rank]) x /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[rank][j];
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

}  // namespace

int rational_rank(RatMat rows) {
  if (rows.empty()) return 0;
  return static_cast<int>(reduce(rows, static_cast<int>(rows[0].size())).size());
}

RatVec kernel_vector(const RatMat& rows) {
  if (rows.empty()) throw std::invalid_argument("kernel_vector: empty system");
  const int ncols = static_cast<int>(rows[0].size());
  RatMat m = rows;
  std::vector<int> pivots = reduce(m, ncols);
  std::vector<int> free_cols;
  for (int c = 0; c < ncols; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
      free_cols.push_back(c);
  if (free_cols.size() != 1)
    throw std::invalid_argument("kernel_vector: kernel dimension is not 1");
  RatVec v(ncols, Rational(0));
  v[free_cols[0]] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_cols[0]];
  return v;
}

RatVec solve_consistent(const RatMat& rows, const RatVec& rhs) {
  if (rows.size() != rhs.size())
    throw std::invalid_argument("solve_consistent: shape mismatch");
  if (rows.empty()) return {};
  const int ncols = static_cast<int>(rows[0].size());
  RatMat m = rows;
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(rhs[i]);
  std::vector<int> pivots = reduce(m, ncols);
  for (std::size_t i = pivots.size(); i < m.size(); ++i)
    if (m[i][ncols] != 0)
      throw std::invalid_argument("solve_consistent: inconsistent system");
  RatVec w(ncols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) w[pivots[r]] = m[r][ncols];
  return w;
}

IntVec primitive_vector(const RatVec& v) {
  BigInt den = 1;
  for (const auto& x : v) den = boost::multiprecision::lcm(den, denominator(x));
  IntVec ints(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = numerator(v[i]) * (den / denominator(v[i]));
    g = boost::multiprecision::gcd(g, ints[i]);
  }
  if (g == 0) throw std::invalid_argument("primitive_vector: zero vector");
  for (auto& x : ints) x /= g;
  return ints;
}

bool is_primitive(const IntVec& v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g == 1;
}

IntVec snf_invariants(IntMat a) {
  if (a.empty() || a[0].empty()) return {};
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int top = 0;
  while (top < std::min(rows, cols)) {
    // smallest nonzero entry in the remaining block becomes the pivot
    int pi = -1, pj = -1;
    for (int i = top; i < rows; ++i)
      for (int j = top; j < cols; ++j)
        if (a[i][j] != 0 &&
            (pi < 0 || boost::multiprecision::abs(a[i][j]) <
                           boost::multiprecision::abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[top], a[pi]);
    for (auto& row : a) std::swap(row[top], row[pj]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = top + 1; i < rows; ++i) {
        // floor division keeps remainders small with either pivot sign;
        // plain truncating division can cycle here
        const BigInt q = floor_div(a[i][top], a[top][top]);
        if (q != 0)
          for (int j = 0; j < cols; ++j) a[i][j] -= q * a[top][j];
        if (a[i][top] != 0) {
          std::swap(a[top], a[i]);
          dirty = true;
        }
      }
      for (int j = top + 1; j < cols; ++j) {
        const BigInt q = floor_div(a[top][j], a[top][top]);
        if (q != 0)
          for (int i = 0; i < rows; ++i) a[i][j] -= q * a[i][top];
        if (a[top][j] != 0) {
          for (int i = 0; i < rows; ++i) std::swap(a[i][top], a[i][j]);
          dirty = true;
        }
      }
    }
    ++top;
  }
  IntVec diag(top);
  for (int i = 0; i < top; ++i) diag[i] = boost::multiprecision::abs(a[i][i]);
  // enforce the divisibility chain d_i | d_{i+1}
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
      const BigInt l = g == 0 ? BigInt(0) : diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

std::pair<BigInt, IntVec> gcd_chain(const IntVec& ms) {
  if (ms.empty()) throw std::invalid_argument("gcd_chain: empty list");
  IntVec eta(ms.size(), BigInt(0));
  BigInt g = ms[0];
  eta[0] = 1;
  for (std::size_t j = 1; j < ms.size(); ++j) {
    auto [g2, u, v] = egcd(g, ms[j]);
    for (std::size_t t = 0; t < j; ++t) eta[t] *= u;
    eta[j] = v;
    g = g2;
  }
  return {g, eta};
}

}  // namespace reebindex
