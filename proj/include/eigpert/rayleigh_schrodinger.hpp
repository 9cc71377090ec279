#ifndef EIGPERT_RAYLEIGH_SCHRODINGER_HPP
#define EIGPERT_RAYLEIGH_SCHRODINGER_HPP

#include <vector>

#include "eigpert/alignment.hpp"
#include "eigpert/matrix.hpp"

namespace eigpert {

/// Strictness tolerance for the in-block diagonal of F-hat, relative to
/// max(1, ||F||).
inline constexpr double kDefaultStrictness = 1e-8;

/// Taylor coefficients of the eigenvalues of A + tF at t = 0:
/// xi_j(t) = a0_j + t a1_j + t^2 a2_j + O(t^3).
struct RsCoefficients {
  std::vector<double> a0;
  std::vector<double> a1;
  std::vector<double> a2;

  std::vector<double> evaluate(double t) const;
};

/// `ap` aligns the direction F (mode blockwise_diagonal, ModeError
/// otherwise). a2_j = -sum over k outside j's block of
/// |F^(k,j)|^2 / (alpha_k - alpha_j).
RsCoefficients rs_coefficients(const AlignedPerturbation& ap);

/// The same a2 through the matrix form -(F^* (Lambda_alpha - alpha_j I)^+ F^)(j,j),
/// with in-block entries of Lambda_alpha - alpha_j I treated as zero.
std::vector<double> rs_second_order_matrix_form(const AlignedPerturbation& ap);

/// In-block rotation of the eigenvector derivative:
///   N(i,j) = (F^* (Lambda_alpha - alpha_j I)^+ F^)(i,j) / (F^(i,i) - F^(j,j))
/// for i != j in one block, zero elsewhere. Skew-Hermitian. Throws
/// DegenerateDirectionError when two in-block diagonal entries of F^ lie
/// within strictness * max(1, ||F||).
Matrix n_matrix(const AlignedPerturbation& ap,
                double strictness = kDefaultStrictness);

/// U'(0) = U_{A,F} (N - M o F^).
Matrix eigenvector_derivative(const AlignedPerturbation& ap, const MMatrix& m,
                              double strictness = kDefaultStrictness);

struct EigensystemPrediction {
  std::vector<double> xi_hat;
  Matrix u_hat; // U_{A,F} + t U'(0)
};

/// Second-order eigenvalues and first-order eigenvectors of A + tF. |t|
/// must keep t ||F|| below half the smallest eigenvalue gap of A
/// (GapTooSmallError otherwise).
EigensystemPrediction predict_eigensystem(const AlignedPerturbation& ap,
                                          const MMatrix& m, double t,
                                          double strictness = kDefaultStrictness);

/// Everything known about the line A + tF at t = 0.
struct LineExpansion {
  SpectralDecomposition base; // U_{A,F}
  HermitianMatrix f_hat;
  std::vector<double> a0;
  std::vector<double> a1;
  std::vector<double> a2;
  Matrix n_mat;
  Matrix m_hadamard_f; // M o F^
  Matrix u_prime;
};

LineExpansion expand_along_line(const AlignedPerturbation& ap,
                                double strictness = kDefaultStrictness);

} // namespace eigpert

#endif
