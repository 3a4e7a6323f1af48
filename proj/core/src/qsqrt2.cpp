// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#include "reebindex/qsqrt2.hpp"

#include <cmath>
#include <stdexcept>

namespace reebindex {

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
  // multiply by the conjugate; the field norm a^2 - 2 b^2 vanishes only at 0
  const Rational norm = o.rat * o.rat - 2 * o.irr * o.irr;
  if (norm == 0) throw std::invalid_argument("QSqrt2: division by zero");
  const Rational r = (rat * o.rat - 2 * irr * o.irr) / norm;
  irr = (irr * o.rat - rat * o.irr) / norm;
  rat = r;
  return *this;
}

int sgn(const QSqrt2& x) {
  const int sr = x.rat == 0 ? 0 : (x.rat > 0 ? 1 : -1);
  const int si = x.irr == 0 ? 0 : (x.irr > 0 ? 1 : -1);
  if (si == 0) return sr;
  if (sr == 0 || sr == si) return si;
  // opposite signs: |rat| versus sqrt(2) |irr| decides, squared exactly
  const Rational lhs = x.rat * x.rat;
  const Rational rhs = 2 * x.irr * x.irr;
  if (lhs == rhs) return 0;  // impossible for rationals, kept for safety
  return lhs > rhs ? sr : si;
}

BigInt floor_q(const QSqrt2& x) {
  if (x.is_rational()) {
    BigInt q, r;
    boost::multiprecision::divide_qr(numerator(x.rat), denominator(x.rat), q, r);
    if (r < 0) q -= 1;
    return q;
  }
  // start from the double estimate, then correct with exact comparisons;
  // the estimate is off by at most a few ulps so the loops take O(1) steps
  BigInt m(static_cast<long long>(std::floor(to_double(x))));
  while (sgn(x - QSqrt2(Rational(m))) < 0) m -= 1;
  while (sgn(x - QSqrt2(Rational(m + 1))) >= 0) m += 1;
  return m;
}

double to_double(const QSqrt2& x) {
  return x.rat.convert_to<double>() + x.irr.convert_to<double>() * M_SQRT2;
}

std::string to_string(const QSqrt2& x) {
  if (x.irr == 0) return x.rat.str();
  std::string s;
  if (x.rat != 0) s = x.rat.str() + (x.irr > 0 ? "+" : "");
  return s + x.irr.str() + "*sqrt2";
}

}  // namespace reebindex
