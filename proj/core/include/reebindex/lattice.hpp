// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#pragma once

#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "reebindex/errors.hpp"

namespace reebindex {

// Exact scalar types for all cone and lattice arithmetic. Index formulas
// involve floors, so every decision downstream of a cone is made over Q (or
// a quadratic extension, see qsqrt2.hpp), never over doubles.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVec = std::vector<BigInt>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// Rank of a rational matrix (rows as vectors) by fraction-free-ish Gauss
/// elimination over mpq.
int rational_rank(RatMat rows);

/// One nonzero kernel vector of a system whose kernel is one dimensional.
/// Throws std::invalid_argument when the kernel dimension is not 1.
RatVec kernel_vector(const RatMat& rows);

/// Solve A w = rhs for a consistent (possibly rank-deficient) system; free
/// coordinates are pinned to zero, which makes the returned witness the
/// canonical Hermite-style particular solution. Throws std::invalid_argument
/// when the system is inconsistent.
RatVec solve_consistent(const RatMat& rows, const RatVec& rhs);

/// Scale a nonzero rational vector to the primitive integer vector on the
/// same ray (positive multiple, gcd of entries 1).
IntVec primitive_vector(const RatVec& v);

/// True when gcd over the entries is 1 (and the vector is nonzero).
bool is_primitive(const IntVec& v);

/// Invariant factors d_1 | d_2 | ... of an integer matrix (Smith normal
/// form diagonal, absolute values, including trailing 1s up to the rank).
IntVec snf_invariants(IntMat a);

/// Deterministic integer witness of the extended gcd over a list:
/// returns (g, eta) with sum_j eta_j m_j = g = gcd(m_j). The greedy
/// left-to-right chain is part of the contract: downstream lift data is
/// reproducible bit for bit because this selection never changes.
std::pair<BigInt, IntVec> gcd_chain(const IntVec& ms);

}  // namespace reebindex
