// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "reebindex/lattice.hpp"

namespace reebindex {

/// Element rat + irr * sqrt(2) of the real quadratic field Q(sqrt 2).
///
/// This is the arithmetic home of perturbed Reeb vectors: a nonzero irr part
/// certifies irrationality outright, so non-resonance and nondegeneracy
/// become sign checks instead of diophantine ones. Sign, comparison and
/// floor are exact (no interval refinement: sign(a + b sqrt 2) reduces to
/// comparing a^2 with 2 b^2).
struct QSqrt2 {
  Rational rat = 0;
  Rational irr = 0;

  QSqrt2() = default;
  QSqrt2(int v) : rat(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational r) : rat(std::move(r)) {}  // NOLINT
  QSqrt2(Rational r, Rational i) : rat(std::move(r)), irr(std::move(i)) {}

  bool is_rational() const { return irr == 0; }
  bool is_integer() const { return irr == 0 && denominator(rat) == 1; }

  QSqrt2 operator-() const { return {-rat, -irr}; }

  QSqrt2& operator+=(const QSqrt2& o) {
    rat += o.rat;
    irr += o.irr;
    return *this;
  }
  QSqrt2& operator-=(const QSqrt2& o) {
    rat -= o.rat;
    irr -= o.irr;
    return *this;
  }
  QSqrt2& operator*=(const QSqrt2& o) {
    const Rational r = rat * o.rat + 2 * irr * o.irr;
    irr = rat * o.irr + irr * o.rat;
    rat = r;
    return *this;
  }
  QSqrt2& operator/=(const QSqrt2& o);

  friend QSqrt2 operator+(QSqrt2 a, const QSqrt2& b) { return a += b; }
  friend QSqrt2 operator-(QSqrt2 a, const QSqrt2& b) { return a -= b; }
  friend QSqrt2 operator*(QSqrt2 a, const QSqrt2& b) { return a *= b; }
  friend QSqrt2 operator/(QSqrt2 a, const QSqrt2& b) { return a /= b; }
  friend bool operator==(const QSqrt2& a, const QSqrt2& b) {
    return a.rat == b.rat && a.irr == b.irr;
  }
  friend bool operator!=(const QSqrt2& a, const QSqrt2& b) { return !(a == b); }
};

/// Exact sign: -1, 0, +1.
int sgn(const QSqrt2& x);

inline bool operator<(const QSqrt2& a, const QSqrt2& b) { return sgn(a - b) < 0; }
inline bool operator>(const QSqrt2& a, const QSqrt2& b) { return sgn(a - b) > 0; }
inline bool operator<=(const QSqrt2& a, const QSqrt2& b) { return sgn(a - b) <= 0; }
inline bool operator>=(const QSqrt2& a, const QSqrt2& b) { return sgn(a - b) >= 0; }

/// Exact floor (largest integer <= x).
BigInt floor_q(const QSqrt2& x);

/// Double approximation, for handing rotation data to the numerical engines.
double to_double(const QSqrt2& x);

/// Render "p/q" or "p/q+r/s*sqrt2" (terms with zero coefficient dropped).
std::string to_string(const QSqrt2& x);

}  // namespace reebindex
