#ifndef EIGPERT_ALIGNMENT_HPP
#define EIGPERT_ALIGNMENT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "eigpert/jacobi.hpp"
#include "eigpert/matrix.hpp"

namespace eigpert {

inline constexpr double kDefaultGroupTolerance = 1e-8;

/// A maximal run of (numerically) equal eigenvalues in the non-increasing
/// order. Indices are 0-based.
struct EigenGroup {
  std::size_t first = 0;
  std::size_t size = 0;
  double value = 0.0; // mean of the member eigenvalues

  std::size_t end() const noexcept { return first + size; }
  bool contains(std::size_t i) const noexcept {
    return i >= first && i < end();
  }
};

struct BlockStructure {
  std::vector<EigenGroup> groups;
  /// Group id of each index.
  std::vector<std::size_t> group_of;

  std::size_t size() const noexcept { return group_of.size(); }
  bool same_block(std::size_t i, std::size_t j) const {
    return group_of[i] == group_of[j];
  }
  /// Indices outside group g, ascending.
  std::vector<std::size_t> complement(std::size_t g) const;
  std::vector<std::size_t> members(std::size_t g) const;
};

/// Splits a non-increasing vector into groups. Adjacent entries whose
/// difference is at most rel_gap_tol * max(1, max|lambda|) share a group,
/// so every gap between groups exceeds the tolerance.
BlockStructure group_eigenvalues(std::span<const double> lambda,
                                 double rel_gap_tol = kDefaultGroupTolerance);

enum class AlignmentMode { raw, blockwise_diagonal };

/// A spectral decomposition of A together with E expressed in its basis:
/// e_hat = U_A^* E U_A, split into its real diagonal and off-diagonal part.
struct AlignedPerturbation {
  SpectralDecomposition base;
  BlockStructure blocks;
  HermitianMatrix e_hat;
  std::vector<double> e_hat_diag;
  HermitianMatrix e_hat_off;
  AlignmentMode mode = AlignmentMode::raw;
  /// ||E|| (operator norm).
  double e_norm = 0.0;
  /// Set by blockwise_diagonalize when two diagonal entries of e_hat in
  /// one block coincide to within 1e-10 * ||E||.
  bool tied_diagonals = false;

  std::size_t size() const noexcept { return base.size(); }
  const std::vector<double>& alpha() const noexcept { return base.lambda; }
  /// max(1, max|alpha|)
  double a_scale() const noexcept;
};

/// Raw-mode alignment: e_hat = U_A^* e U_A in the basis of `base`, with
/// blocks from group_eigenvalues(base.lambda, rel_gap_tol).
AlignedPerturbation conjugate_to_eigenbasis(
    const SpectralDecomposition& base, const HermitianMatrix& e,
    double rel_gap_tol = kDefaultGroupTolerance);

/// Rotates U_A inside every eigenspace so that e_hat becomes block-wise
/// diagonal with non-increasing diagonal inside each block.
AlignedPerturbation blockwise_diagonalize(const AlignedPerturbation& ap);

/// eigh(a), grouping, conjugation and block-wise diagonalization in one go.
AlignedPerturbation align(const HermitianMatrix& a, const HermitianMatrix& e,
                          double rel_gap_tol = kDefaultGroupTolerance);

/// M(i,j) = 1/(alpha_i - alpha_j) across blocks, 0 inside blocks.
/// Antisymmetric by construction.
class MMatrix {
public:
  MMatrix(const SpectralDecomposition& base, const BlockStructure& blocks);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const double> entries() const noexcept { return entries_; }
  /// M o x
  Matrix hadamard(const Matrix& x) const;
  Matrix hadamard(const HermitianMatrix& x) const { return hadamard(x.matrix()); }
  Matrix as_matrix() const;

private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

MMatrix m_matrix(const SpectralDecomposition& base,
                 const BlockStructure& blocks);

struct BlockMembership {
  std::size_t block = 0;
  std::size_t size = 0;
  double worst_off_diagonal = 0.0; // max |B(i,j)|, i != j
  double min_beta_gap = 0.0;       // min |beta_i - beta_j|, i != j
  double gap_ratio = 0.0;          // min_beta_gap / ||E||
};

struct MembershipReport {
  bool member = false;
  /// E = 0 with a multi-element block: the gap condition cannot hold.
  bool zero_perturbation = false;
  std::vector<BlockMembership> blocks; // multi-element blocks only
  double worst_off_diagonal = 0.0;
  double worst_gap_ratio = 0.0; // smallest gap ratio over blocks
};

/// Tests whether E lies in the cone where every Schur complement B is
/// diagonal (off-diagonals at most diag_tol * ||E||) with eigenvalue gaps
/// |beta_i - beta_j| >= c * ||E||. Throws GapTooSmallError unless ||E||
/// is below half the smallest gap between eigenvalue groups of A.
MembershipReport vc_membership(const AlignedPerturbation& ap, double c,
                               double diag_tol);

} // namespace eigpert

#endif
