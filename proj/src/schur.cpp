#include "eigpert/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigpert/error.hpp"
#include "eigpert/jacobi.hpp"
#include "eigpert/norms.hpp"

namespace eigpert {
namespace {

constexpr double kPairingTolerance = 1e-12;
// b is assembled from a non-symmetric product; its asymmetry is rounding.
constexpr double kAssemblyAsymmetry = 1e-8;

// Lambda_tau - rho I + d
Matrix shifted_complement_block(const SchurData& s) {
  Matrix g = s.d.matrix();
  for (std::size_t i = 0; i < s.m; ++i)
    g(i, i) += s.lambda_tau[i] - s.rho;
  return g;
}

} // namespace

SchurData schur_data(const AlignedPerturbation& ap, std::size_t block,
                     double margin_factor) {
  if (block >= ap.blocks.groups.size())
    throw InvalidArgument("schur_data: no block " + std::to_string(block));

  SchurData s;
  s.block_index = block;
  s.rho = ap.blocks.groups[block].value;
  s.members = ap.blocks.members(block);
  s.complement = ap.blocks.complement(block);
  s.l = s.members.size();
  s.m = s.complement.size();
  for (std::size_t k : s.complement)
    s.lambda_tau.push_back(ap.alpha()[k]);

  double margin = std::numeric_limits<double>::infinity();
  for (double tau : s.lambda_tau)
    margin = std::min(margin, std::fabs(tau - s.rho));
  if (s.m > 0 && !(margin > margin_factor * ap.e_norm))
    throw GapTooSmallError(
        "block " + std::to_string(block) + " (rho = " + std::to_string(s.rho) +
            "): distance " + std::to_string(margin) +
            " to the rest of the spectrum is not above " +
            std::to_string(margin_factor) + " * ||E|| = " +
            std::to_string(margin_factor * ap.e_norm),
        block);

  s.e11 = ap.e_hat.principal(s.members);
  s.c = ap.e_hat.matrix().select(s.members, s.complement);
  s.d = ap.e_hat.principal(s.complement);

  Matrix b = s.e11.matrix();
  if (s.m > 0)
    b -= s.c * solve(shifted_complement_block(s), s.c.adjoint());
  s.b = HermitianMatrix(b, kAssemblyAsymmetry);
  s.beta = eigh(s.b).lambda;
  return s;
}

HermitianMatrix simplified_schur_complement(const SchurData& s,
                                            double pinv_threshold) {
  std::vector<double> shifted(s.m);
  for (std::size_t i = 0; i < s.m; ++i)
    shifted[i] = s.lambda_tau[i] - s.rho;
  const auto inv = diagonal_pinv(shifted, pinv_threshold);
  Matrix b = s.e11.matrix();
  if (s.m > 0) {
    Matrix scaled = s.c;
    for (std::size_t i = 0; i < scaled.rows(); ++i)
      for (std::size_t j = 0; j < scaled.cols(); ++j)
        scaled(i, j) *= inv[j];
    b -= scaled * s.c.adjoint();
  }
  return HermitianMatrix(b, kAssemblyAsymmetry);
}

RefinedEigenvalues refined_eigenvalues(const AlignedPerturbation& ap,
                                       SchurVariant variant,
                                       double margin_factor) {
  RefinedEigenvalues out;
  out.values.assign(ap.size(), 0.0);
  const double pinv_threshold = 1e-12 * ap.a_scale();
  for (std::size_t g = 0; g < ap.blocks.groups.size(); ++g) {
    const SchurData s = schur_data(ap, g, margin_factor);
    const std::vector<double> beta =
        variant == SchurVariant::full
            ? s.beta
            : eigh(simplified_schur_complement(s, pinv_threshold)).lambda;
    for (std::size_t k = 0; k < s.l; ++k)
      out.values[s.members[k]] = ap.alpha()[s.members[k]] + beta[k];
    for (std::size_t k = 1; k < beta.size(); ++k)
      if (beta[k - 1] - beta[k] <= kPairingTolerance) {
        out.ambiguous_blocks.push_back(g);
        break;
      }
  }
  return out;
}

SimilarityDiagnostic schur_similarity_diagnostic(const AlignedPerturbation& ap,
                                                 std::size_t block,
                                                 double margin_factor) {
  const SchurData s = schur_data(ap, block, margin_factor);
  const std::size_t l = s.l;
  const std::size_t m = s.m;
  const std::size_t n = l + m;

  const Matrix g = shifted_complement_block(s);
  const Matrix coupling = m > 0 ? solve(g, s.c.adjoint()) : Matrix(0, l);
  const Matrix q3 = coupling * s.b.matrix();
  const Matrix q4 = g + coupling * s.c;

  SimilarityDiagnostic diag;
  diag.order = s.members;
  diag.order.insert(diag.order.end(), s.complement.begin(), s.complement.end());
  diag.transformed = Matrix(n, n);
  diag.basis = Matrix::identity(n);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j)
      diag.transformed(i, j) = s.b(i, j);
    for (std::size_t j = 0; j < m; ++j)
      diag.transformed(i, l + j) = s.c(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      diag.transformed(l + i, j) = q3(i, j);
      diag.basis(l + i, j) = coupling(i, j);
    }
    for (std::size_t j = 0; j < m; ++j)
      diag.transformed(l + i, l + j) = q4(i, j);
  }
  for (std::size_t i = 0; i < n; ++i)
    diag.transformed(i, i) += s.rho;

  diag.q2_norm = operator_norm(s.c);
  diag.q3_norm = operator_norm(q3);
  diag.b_norm = operator_norm(s.b);
  diag.c_norm = diag.q2_norm;
  return diag;
}

} // namespace eigpert
