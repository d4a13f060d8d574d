#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

namespace fanoqed::detail {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// psi <- exp(-i h t) psi for real symmetric sparse h, t >= 0, via a Chebyshev
// expansion with Bessel coefficients. Spectral bounds come from Gershgorin
// disks unless the caller passes enclosing [lambda_lo, lambda_hi]; tighter
// bounds shorten the series, wrong ones diverge it. The series is truncated
// once the coefficient tail drops below tol. Norm is conserved to the
// truncation level; summation order is fixed.
void propagate(const SpMat& h, double t, Eigen::VectorXcd& psi,
               double tol = 1e-12, double lambda_lo = 0.0,
               double lambda_hi = -1.0);

// J_0..J_n at real z > 0 by downward recurrence, normalized through the
// even-order sum rule.
std::vector<double> bessel_j_row(int n, double z);

}  // namespace fanoqed::detail
