#ifndef EIGPERT_NORMS_HPP
#define EIGPERT_NORMS_HPP

#include <span>
#include <vector>

#include "eigpert/matrix.hpp"

namespace eigpert {

/// Spectral norm: square root of the largest eigenvalue of m^* m, computed
/// with the Jacobi solver. Throws InvalidArgument on non-finite input.
double operator_norm(const Matrix& m);

/// max |lambda_i|.
double operator_norm(const HermitianMatrix& h);

/// Moore-Penrose inverse of diag(values): reciprocal where
/// |value| > threshold, zero otherwise.
std::vector<double> diagonal_pinv(std::span<const double> values,
                                  double threshold);

} // namespace eigpert

#endif
