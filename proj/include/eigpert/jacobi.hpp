#ifndef EIGPERT_JACOBI_HPP
#define EIGPERT_JACOBI_HPP

#include <cstddef>
#include <vector>

#include "eigpert/matrix.hpp"

namespace eigpert {

/// h = u * diag(lambda) * u^*, u unitary, lambda non-increasing.
///
/// Columns follow a phase convention: the entry of largest modulus in each
/// column (first one on ties) is real and nonnegative.
struct SpectralDecomposition {
  Matrix u;
  std::vector<double> lambda;

  std::size_t size() const noexcept { return lambda.size(); }
  /// u * diag(lambda) * u^*
  HermitianMatrix reconstruct() const;
};

struct JacobiOptions {
  /// Relative off-diagonal target; 0 selects the default 1e-13 * n.
  double tol = 0.0;
  int max_sweeps = 64;
};

/// Cyclic-by-rows Jacobi with complex plane rotations.
///
/// Iterates until the off-diagonal Frobenius mass of the rotated matrix is
/// at most tol * ||h||_F. Eigenspaces of repeated eigenvalues come back in
/// an arbitrary (but deterministic) orthonormal basis. Throws
/// ConvergenceError after max_sweeps.
SpectralDecomposition eigh(const HermitianMatrix& h, JacobiOptions opts = {});

/// ||u diag(lambda) u^* - h|| in the operator norm.
double residual(const HermitianMatrix& h, const SpectralDecomposition& d);

/// Rescales each column so its largest-modulus entry is real nonnegative.
void normalize_column_phases(Matrix& u);

} // namespace eigpert

#endif
