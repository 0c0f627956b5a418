#pragma once

#include <vector>

#include "burgers1d/core.hpp"
#include "burgers1d/discretization.hpp"

// Brute-force reference eigensolves backed by LAPACK. These stay independent
// of the library's Sturm-bisection path on purpose: they are the oracles the
// tests compare against.
namespace oracle {

/// All eigenvalues (real parts, ascending) of a dense row-major n x n matrix,
/// via dgeev (Hessenberg QR with balancing).
std::vector<double> dense_eigenvalues(std::vector<double> rowmajor, int n);

/// All eigenvalues (ascending) of a symmetric tridiagonal matrix via dstev.
std::vector<double> dense_sym_tridiag_eigenvalues(const burgers1d::TriDiag& A);

/// Dense nonsymmetric flux-form discretization of the Phi-operator
/// -(eps Phi'' - (U Phi)') on the interior nodes, assembled from the
/// symmetrization weight:
///   B[i][i-1] = -(eps/dx^2) p_{i-1/2} / p_{i-1}
///   B[i][i]   =  (eps/dx^2) (p_{i-1/2} + p_{i+1/2}) / p_i
///   B[i][i+1] = -(eps/dx^2) p_{i+1/2} / p_{i+1}
/// Exactly similar (via diag(sqrt p)) to the symmetrized operator, so the
/// two spectra must agree to roundoff.
std::vector<double> phi_operator_dense(const burgers1d::Field& weight, double eps);

}  // namespace oracle
