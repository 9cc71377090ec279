#ifndef EIGPERT_FIRST_ORDER_HPP
#define EIGPERT_FIRST_ORDER_HPP

#include <vector>

#include "eigpert/alignment.hpp"
#include "eigpert/matrix.hpp"

namespace eigpert {

/// alpha_j + e_hat(j,j). Requires a block-wise diagonalized perturbation
/// (ModeError otherwise); the error against the exact eigenvalues is
/// O(||E||^2).
std::vector<double> first_order_eigenvalues(const AlignedPerturbation& ap);

struct GershgorinDisc {
  double center = 0.0;
  double radius = 0.0;

  bool contains(double x) const noexcept {
    return x >= center - radius && x <= center + radius;
  }
};

/// Row discs of Lambda_alpha + e_hat: center alpha_j + e_hat(j,j), radius
/// the off-diagonal row sum of |e_hat|. Works in either mode.
std::vector<GershgorinDisc> gershgorin_intervals(const AlignedPerturbation& ap);

/// U_ap = U_A (I - M o e_hat), approximate eigenvectors of A + E.
Matrix u_approx(const AlignedPerturbation& ap, const MMatrix& m);

/// ||(A + E) - U_ap (Lambda_alpha + diag(e_hat)) U_ap^*||, which is
/// O(||E||^2).
double approx_decomposition_residual(const AlignedPerturbation& ap,
                                     const MMatrix& m);

struct FirstOrderPrediction {
  std::vector<double> xi_hat;
  Matrix u_ap;
  BlockStructure blocks;
  /// ||U_ap^* U_ap - I||
  double orthonormality_defect = 0.0;
};

FirstOrderPrediction first_order_prediction(const AlignedPerturbation& ap);

} // namespace eigpert

#endif
