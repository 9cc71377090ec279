#ifndef EIGPERT_SCHUR_HPP
#define EIGPERT_SCHUR_HPP

#include <cstddef>
#include <vector>

#include "eigpert/alignment.hpp"
#include "eigpert/matrix.hpp"

namespace eigpert {

/// Required separation between rho and the rest of the spectrum, in units
/// of ||E||.
inline constexpr double kDefaultMarginFactor = 2.0;

/// Schur data of one eigenvalue group rho of A.
///
/// In the rho-first ordering [group | rest] and after shifting A by -rho,
///
///   Lambda_alpha - rho I + e_hat = [ e11   c           ]
///                                  [ c^*   Lambda_tau - rho I + d ]
///
/// and b = e11 - c (Lambda_tau - rho I + d)^{-1} c^* is the Schur complement
/// seen by the rho-eigenspace.
struct SchurData {
  std::size_t block_index = 0;
  double rho = 0.0;
  std::size_t l = 0;
  std::size_t m = 0;
  std::vector<std::size_t> members;    // global indices of the group
  std::vector<std::size_t> complement; // global indices of the rest
  HermitianMatrix e11;
  HermitianMatrix b;
  Matrix c;
  HermitianMatrix d;
  std::vector<double> lambda_tau;
  std::vector<double> beta; // eigenvalues of b, non-increasing
};

SchurData schur_data(const AlignedPerturbation& ap, std::size_t block,
                     double margin_factor = kDefaultMarginFactor);

/// e11 - c (Lambda_tau - rho I)^+ c^*: the Schur complement with d dropped.
HermitianMatrix simplified_schur_complement(const SchurData& s,
                                            double pinv_threshold);

enum class SchurVariant { full, simplified };

struct RefinedEigenvalues {
  /// alpha_j + beta for each group, in the global non-increasing order.
  std::vector<double> values;
  /// Groups whose beta has two values within 1e-12; within-block pairing
  /// with the exact eigenvalues is then ambiguous.
  std::vector<std::size_t> ambiguous_blocks;
};

/// Degenerate-aware eigenvalue prediction. The full variant errs by
/// O(||B|| ||C||^2) per group, the simplified one by O(||E||^3).
RefinedEigenvalues refined_eigenvalues(const AlignedPerturbation& ap,
                                       SchurVariant variant,
                                       double margin_factor = kDefaultMarginFactor);

struct SimilarityDiagnostic {
  /// Block-triangular similarity transform of A + E in the rho-first
  /// ordering:
  ///   [ b                  c                          ]  + rho I
  ///   [ g^{-1} c^* b       g + g^{-1} c^* c           ]
  /// with g = Lambda_tau - rho I + d.
  Matrix transformed;
  /// Non-unitary basis change L = [[I, 0], [g^{-1} c^*, I]] with
  /// transformed = L (Lambda_alpha + e_hat) L^{-1}, both sides in the
  /// rho-first ordering.
  Matrix basis;
  /// rho-first permutation: position k holds global index order[k].
  std::vector<std::size_t> order;
  double q2_norm = 0.0; // ||upper-right quadrant||
  double q3_norm = 0.0; // ||lower-left quadrant||
  double b_norm = 0.0;
  double c_norm = 0.0;
};

SimilarityDiagnostic schur_similarity_diagnostic(
    const AlignedPerturbation& ap, std::size_t block,
    double margin_factor = kDefaultMarginFactor);

} // namespace eigpert

#endif
