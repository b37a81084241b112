#pragma once

#include <Eigen/Dense>

#include <complex>

namespace orbitframes {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Largest singular value.
double spectral_norm(const MatrixXcd& m);

/// sigma_max / sigma_min; +inf for singular or empty matrices.
double condition_number(const MatrixXcd& m);

/// max |eigenvalue|.
double spectral_radius(const MatrixXcd& m);

/// Eigenvalues of a Hermitian matrix, ascending.
VectorXd hermitian_eigenvalues(const MatrixXcd& h);

/// h^{power} for Hermitian positive semidefinite h, with eigenvalues clamped
/// from below at `floor` before the power is taken.
MatrixXcd hermitian_power(const MatrixXcd& h, double power, double floor = 0.0);

/// Orthonormal basis (columns) of the numerical kernel of m: right singular
/// vectors whose singular value is below rel_tol * sigma_max, plus every
/// direction beyond the row rank.
MatrixXcd kernel_basis(const MatrixXcd& m, double rel_tol);

/// Bottleneck distance between two equal-size multisets of complex numbers:
/// the largest pairwise gap under the best one-to-one matching. Brute force
/// over permutations, so only for small sets.
double multiset_distance(const VectorXcd& a, const VectorXcd& b);

}  // namespace orbitframes
