#include "eigpert/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigpert/error.hpp"
#include "eigpert/norms.hpp"
#include "eigpert/schur.hpp"

namespace eigpert {
namespace {

constexpr double kTieTolerance = 1e-10;

Matrix zero_in_block_off_diagonals(Matrix m, const BlockStructure& blocks) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && blocks.same_block(i, j))
        m(i, j) = 0.0;
  return m;
}

void split_diagonal(AlignedPerturbation& ap) {
  ap.e_hat_diag = ap.e_hat.real_diagonal();
  Matrix off = ap.e_hat.matrix();
  for (std::size_t i = 0; i < off.rows(); ++i)
    off(i, i) = 0.0;
  ap.e_hat_off = HermitianMatrix(off);
}

double min_group_gap(const AlignedPerturbation& ap) {
  double gap = std::numeric_limits<double>::infinity();
  const auto& g = ap.blocks.groups;
  for (std::size_t k = 1; k < g.size(); ++k)
    gap = std::min(gap, ap.alpha()[g[k - 1].end() - 1] - ap.alpha()[g[k].first]);
  return gap;
}

} // namespace

std::vector<std::size_t> BlockStructure::complement(std::size_t g) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < group_of.size(); ++i)
    if (group_of[i] != g)
      idx.push_back(i);
  return idx;
}

std::vector<std::size_t> BlockStructure::members(std::size_t g) const {
  std::vector<std::size_t> idx(groups[g].size);
  for (std::size_t k = 0; k < idx.size(); ++k)
    idx[k] = groups[g].first + k;
  return idx;
}

BlockStructure group_eigenvalues(std::span<const double> lambda,
                                 double rel_gap_tol) {
  if (!(rel_gap_tol > 0.0))
    throw InvalidArgument("grouping tolerance must be positive");
  for (std::size_t i = 1; i < lambda.size(); ++i)
    if (lambda[i] > lambda[i - 1])
      throw InvalidArgument("eigenvalues must be non-increasing");

  double scale = 1.0;
  for (double x : lambda)
    scale = std::max(scale, std::fabs(x));
  const double tol = rel_gap_tol * scale;

  BlockStructure bs;
  bs.group_of.resize(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (i == 0 || lambda[i - 1] - lambda[i] > tol)
      bs.groups.push_back({i, 0, 0.0});
    auto& g = bs.groups.back();
    ++g.size;
    bs.group_of[i] = bs.groups.size() - 1;
  }
  for (auto& g : bs.groups) {
    double s = 0.0;
    for (std::size_t i = g.first; i < g.end(); ++i)
      s += lambda[i];
    g.value = s / static_cast<double>(g.size);
  }
  return bs;
}

double AlignedPerturbation::a_scale() const noexcept {
  double s = 1.0;
  for (double x : base.lambda)
    s = std::max(s, std::fabs(x));
  return s;
}

AlignedPerturbation conjugate_to_eigenbasis(const SpectralDecomposition& base,
                                            const HermitianMatrix& e,
                                            double rel_gap_tol) {
  if (e.size() != base.size() || base.u.rows() != base.size())
    throw DimensionError("conjugate_to_eigenbasis: A is " +
                         std::to_string(base.size()) + "x" +
                         std::to_string(base.size()) + ", E is " +
                         std::to_string(e.size()) + "x" +
                         std::to_string(e.size()));
  AlignedPerturbation ap;
  ap.base = base;
  ap.blocks = group_eigenvalues(base.lambda, rel_gap_tol);
  ap.e_hat = e.congruence(base.u);
  ap.e_norm = operator_norm(ap.e_hat);
  ap.mode = AlignmentMode::raw;
  split_diagonal(ap);
  return ap;
}

AlignedPerturbation blockwise_diagonalize(const AlignedPerturbation& ap) {
  const std::size_t n = ap.size();
  Matrix rot = Matrix::identity(n);
  for (std::size_t g = 0; g < ap.blocks.groups.size(); ++g) {
    const auto& grp = ap.blocks.groups[g];
    if (grp.size < 2)
      continue;
    const auto idx = ap.blocks.members(g);
    const auto sub = eigh(ap.e_hat.principal(idx));
    for (std::size_t i = 0; i < grp.size; ++i)
      for (std::size_t j = 0; j < grp.size; ++j)
        rot(grp.first + i, grp.first + j) = sub.u(i, j);
  }

  AlignedPerturbation out = ap;
  out.base.u = ap.base.u * rot;
  out.e_hat = HermitianMatrix(
      zero_in_block_off_diagonals(ap.e_hat.congruence(rot).matrix(), ap.blocks));
  out.mode = AlignmentMode::blockwise_diagonal;
  split_diagonal(out);

  out.tied_diagonals = false;
  for (const auto& grp : out.blocks.groups)
    for (std::size_t i = grp.first + 1; i < grp.end(); ++i)
      if (out.e_hat_diag[i - 1] - out.e_hat_diag[i] <= kTieTolerance * out.e_norm)
        out.tied_diagonals = true;
  return out;
}

AlignedPerturbation align(const HermitianMatrix& a, const HermitianMatrix& e,
                          double rel_gap_tol) {
  return blockwise_diagonalize(conjugate_to_eigenbasis(eigh(a), e, rel_gap_tol));
}

MMatrix::MMatrix(const SpectralDecomposition& base,
                 const BlockStructure& blocks)
    : n_(base.size()), entries_(n_ * n_, 0.0) {
  if (blocks.size() != n_)
    throw DimensionError("m_matrix: block structure does not match spectrum");
  const auto& a = base.lambda;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (blocks.same_block(i, j))
        continue;
      const double v = 1.0 / (a[i] - a[j]);
      entries_[i * n_ + j] = v;
      entries_[j * n_ + i] = -v;
    }
}

Matrix MMatrix::hadamard(const Matrix& x) const {
  return eigpert::hadamard(entries_, x);
}

Matrix MMatrix::as_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      m(i, j) = entries_[i * n_ + j];
  return m;
}

MMatrix m_matrix(const SpectralDecomposition& base,
                 const BlockStructure& blocks) {
  return MMatrix(base, blocks);
}

MembershipReport vc_membership(const AlignedPerturbation& ap, double c,
                               double diag_tol) {
  if (!(c > 0.0) || !(diag_tol > 0.0))
    throw InvalidArgument("vc_membership: c and diag_tol must be positive");
  const double gap = min_group_gap(ap);
  if (!(ap.e_norm < 0.5 * gap))
    throw GapTooSmallError("vc_membership: ||E|| = " + std::to_string(ap.e_norm) +
                               " is not below half the smallest eigenvalue gap " +
                               std::to_string(gap),
                           0);

  MembershipReport rep;
  rep.member = true;
  rep.worst_gap_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < ap.blocks.groups.size(); ++g) {
    if (ap.blocks.groups[g].size < 2)
      continue;
    BlockMembership bm;
    bm.block = g;
    bm.size = ap.blocks.groups[g].size;
    if (ap.e_norm == 0.0) {
      rep.zero_perturbation = true;
      rep.member = false;
      rep.worst_gap_ratio = 0.0;
      rep.blocks.push_back(bm);
      continue;
    }
    const SchurData s = schur_data(ap, g);
    for (std::size_t i = 0; i < s.l; ++i)
      for (std::size_t j = 0; j < s.l; ++j)
        if (i != j)
          bm.worst_off_diagonal = std::max(bm.worst_off_diagonal, std::abs(s.b(i, j)));
    bm.min_beta_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < s.beta.size(); ++i)
      bm.min_beta_gap = std::min(bm.min_beta_gap, s.beta[i - 1] - s.beta[i]);
    bm.gap_ratio = bm.min_beta_gap / ap.e_norm;

    if (bm.worst_off_diagonal > diag_tol * ap.e_norm || bm.gap_ratio < c)
      rep.member = false;
    rep.worst_off_diagonal = std::max(rep.worst_off_diagonal, bm.worst_off_diagonal);
    rep.worst_gap_ratio = std::min(rep.worst_gap_ratio, bm.gap_ratio);
    rep.blocks.push_back(bm);
  }
  return rep;
}

} // namespace eigpert
