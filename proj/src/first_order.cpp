#include "eigpert/first_order.hpp"

#include <cmath>

#include "eigpert/error.hpp"
#include "eigpert/norms.hpp"

namespace eigpert {
namespace {

void check_m(const AlignedPerturbation& ap, const MMatrix& m) {
  if (m.size() != ap.size())
    throw DimensionError("M matrix does not match the decomposition");
}

// I - M o e_hat, the first-order eigenvector rotation in the eigenbasis.
Matrix rotation(const AlignedPerturbation& ap, const MMatrix& m) {
  return Matrix::identity(ap.size()) - m.hadamard(ap.e_hat);
}

} // namespace

std::vector<double> first_order_eigenvalues(const AlignedPerturbation& ap) {
  if (ap.mode != AlignmentMode::blockwise_diagonal)
    throw ModeError("first_order_eigenvalues needs a block-wise diagonalized "
                    "perturbation");
  std::vector<double> xi(ap.size());
  for (std::size_t j = 0; j < ap.size(); ++j)
    xi[j] = ap.alpha()[j] + ap.e_hat_diag[j];
  return xi;
}

std::vector<GershgorinDisc> gershgorin_intervals(const AlignedPerturbation& ap) {
  std::vector<GershgorinDisc> discs(ap.size());
  for (std::size_t j = 0; j < ap.size(); ++j) {
    discs[j].center = ap.alpha()[j] + ap.e_hat_diag[j];
    for (std::size_t i = 0; i < ap.size(); ++i)
      if (i != j)
        discs[j].radius += std::abs(ap.e_hat(j, i));
  }
  return discs;
}

Matrix u_approx(const AlignedPerturbation& ap, const MMatrix& m) {
  check_m(ap, m);
  return ap.base.u * rotation(ap, m);
}

double approx_decomposition_residual(const AlignedPerturbation& ap,
                                     const MMatrix& m) {
  check_m(ap, m);
  // Unitary invariance: evaluate in the eigenbasis of A, where A + E is
  // Lambda_alpha + e_hat and U_ap is I - M o e_hat.
  const std::size_t n = ap.size();
  const Matrix r = rotation(ap, m);
  Matrix shifted_d(n, n);
  Matrix exact = ap.e_hat.matrix();
  for (std::size_t j = 0; j < n; ++j) {
    shifted_d(j, j) = ap.alpha()[j] + ap.e_hat_diag[j];
    exact(j, j) += ap.alpha()[j];
  }
  return operator_norm(exact - r * shifted_d * r.adjoint());
}

FirstOrderPrediction first_order_prediction(const AlignedPerturbation& ap) {
  const MMatrix m = m_matrix(ap.base, ap.blocks);
  FirstOrderPrediction p;
  p.xi_hat = first_order_eigenvalues(ap);
  p.u_ap = u_approx(ap, m);
  p.blocks = ap.blocks;
  p.orthonormality_defect =
      operator_norm(p.u_ap.adjoint() * p.u_ap - Matrix::identity(ap.size()));
  return p;
}

} // namespace eigpert
