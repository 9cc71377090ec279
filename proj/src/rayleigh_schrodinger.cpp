#include "eigpert/rayleigh_schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigpert/error.hpp"
#include "eigpert/norms.hpp"

namespace eigpert {
namespace {

void require_blockwise(const AlignedPerturbation& ap, const char* what) {
  if (ap.mode != AlignmentMode::blockwise_diagonal)
    throw ModeError(std::string(what) +
                    " needs a block-wise diagonalized direction");
}

// diag((Lambda_alpha - alpha_j I)^+), with j's own block mapped to zero.
std::vector<double> shifted_pinv(const AlignedPerturbation& ap, std::size_t j) {
  std::vector<double> shifted(ap.size());
  for (std::size_t k = 0; k < ap.size(); ++k)
    shifted[k] = ap.blocks.same_block(k, j) ? 0.0 : ap.alpha()[k] - ap.alpha()[j];
  return diagonal_pinv(shifted, 1e-12 * ap.a_scale());
}

// (F^* D F)(i,j) for real diagonal D.
Complex weighted_gram(const HermitianMatrix& f, std::span<const double> d,
                      std::size_t i, std::size_t j) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (d[k] != 0.0)
      s += std::conj(f(k, i)) * d[k] * f(k, j);
  return s;
}

void check_strict(const AlignedPerturbation& ap, double strictness) {
  const double tol = strictness * std::max(1.0, ap.e_norm);
  for (std::size_t g = 0; g < ap.blocks.groups.size(); ++g) {
    const auto& grp = ap.blocks.groups[g];
    for (std::size_t i = grp.first; i < grp.end(); ++i)
      for (std::size_t j = i + 1; j < grp.end(); ++j)
        if (std::fabs(ap.e_hat_diag[i] - ap.e_hat_diag[j]) <= tol)
          throw DegenerateDirectionError(
              "block " + std::to_string(g) + ": diagonal entries " +
                  std::to_string(i) + " and " + std::to_string(j) +
                  " of F^ coincide within " + std::to_string(tol),
              g);
  }
}

double min_group_gap(const AlignedPerturbation& ap) {
  double gap = std::numeric_limits<double>::infinity();
  const auto& g = ap.blocks.groups;
  for (std::size_t k = 1; k < g.size(); ++k)
    gap = std::min(gap, ap.alpha()[g[k - 1].end() - 1] - ap.alpha()[g[k].first]);
  return gap;
}

} // namespace

std::vector<double> RsCoefficients::evaluate(double t) const {
  std::vector<double> xi(a0.size());
  for (std::size_t j = 0; j < xi.size(); ++j)
    xi[j] = a0[j] + t * (a1[j] + t * a2[j]);
  return xi;
}

RsCoefficients rs_coefficients(const AlignedPerturbation& ap) {
  require_blockwise(ap, "rs_coefficients");
  const std::size_t n = ap.size();
  RsCoefficients c{ap.alpha(), ap.e_hat_diag, std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (!ap.blocks.same_block(k, j))
        s += std::norm(ap.e_hat(k, j)) / (ap.alpha()[k] - ap.alpha()[j]);
    c.a2[j] = -s;
  }
  return c;
}

std::vector<double> rs_second_order_matrix_form(const AlignedPerturbation& ap) {
  require_blockwise(ap, "rs_second_order_matrix_form");
  std::vector<double> a2(ap.size());
  for (std::size_t j = 0; j < ap.size(); ++j)
    a2[j] = -weighted_gram(ap.e_hat, shifted_pinv(ap, j), j, j).real();
  return a2;
}

Matrix n_matrix(const AlignedPerturbation& ap, double strictness) {
  require_blockwise(ap, "n_matrix");
  check_strict(ap, strictness);
  const std::size_t n = ap.size();
  Matrix nm(n, n);
  for (const auto& grp : ap.blocks.groups)
    for (std::size_t j = grp.first; j < grp.end(); ++j) {
      const auto pinv = shifted_pinv(ap, j);
      for (std::size_t i = grp.first; i < j; ++i) {
        const Complex v = weighted_gram(ap.e_hat, pinv, i, j) /
                          (ap.e_hat_diag[i] - ap.e_hat_diag[j]);
        nm(i, j) = v;
        nm(j, i) = -std::conj(v);
      }
    }
  return nm;
}

Matrix eigenvector_derivative(const AlignedPerturbation& ap, const MMatrix& m,
                              double strictness) {
  if (m.size() != ap.size())
    throw DimensionError("M matrix does not match the decomposition");
  return ap.base.u * (n_matrix(ap, strictness) - m.hadamard(ap.e_hat));
}

EigensystemPrediction predict_eigensystem(const AlignedPerturbation& ap,
                                          const MMatrix& m, double t,
                                          double strictness) {
  const double gap = min_group_gap(ap);
  if (!(2.0 * std::fabs(t) * ap.e_norm < gap))
    throw GapTooSmallError("|t| * ||F|| = " +
                               std::to_string(std::fabs(t) * ap.e_norm) +
                               " is not below half the smallest eigenvalue gap " +
                               std::to_string(gap),
                           0);
  EigensystemPrediction p;
  p.xi_hat = rs_coefficients(ap).evaluate(t);
  p.u_hat = ap.base.u + t * eigenvector_derivative(ap, m, strictness);
  return p;
}

LineExpansion expand_along_line(const AlignedPerturbation& ap,
                                double strictness) {
  const auto c = rs_coefficients(ap);
  const MMatrix m = m_matrix(ap.base, ap.blocks);
  LineExpansion x;
  x.base = ap.base;
  x.f_hat = ap.e_hat;
  x.a0 = c.a0;
  x.a1 = c.a1;
  x.a2 = c.a2;
  x.n_mat = n_matrix(ap, strictness);
  x.m_hadamard_f = m.hadamard(ap.e_hat);
  x.u_prime = ap.base.u * (x.n_mat - x.m_hadamard_f);
  return x;
}

} // namespace eigpert
