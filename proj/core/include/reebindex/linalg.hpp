// reeb-index: symplectic path indices and toric contact homology tables.
// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

namespace reebindex {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Numerical tolerances shared across the engines. These are configuration
/// values, not constants; every public entry point accepts an override.
struct Tolerances {
  double symplectic_tol = 1e-9;  ///< admissible defect of M^T J M - J
  double eig_tol = 1e-8;         ///< eigenvalue / nullity thresholding
};

/// The standard complex structure J0 = [[0, -I], [I, 0]] on coordinates
/// (q_1..q_n, p_1..p_n). All conventions in the library are anchored here:
/// omega(x, y) = <J0 x, y>, and generators act through Gamma' = J0 A Gamma.
Mat standard_J(int n);

/// max-norm of M^T J0 M - J0.
double symplectic_defect(const Mat& M);

bool is_symplectic(const Mat& M, double tol = 1e-9);

/// Newton-type correction pulling M back onto Sp(2n). With the antisymmetric
/// defect E = M^T J0 M - J0, the update M <- M (I + J0 E / 2) cancels E to
/// first order; two or three sweeps reach machine precision for small drift.
Mat project_symplectic(const Mat& M, int sweeps = 3);

}  // namespace reebindex
