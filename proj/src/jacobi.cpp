#include "eigpert/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigpert/error.hpp"
#include "eigpert/norms.hpp"

namespace eigpert {
namespace {

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j)
        s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with G = [[c, s e^{i phi}], [-s e^{-i phi}, c]] acting
// on coordinates (p,q): a <- G^* a G, v <- v G.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0)
    return;
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::isinf(theta))
    t = 0.0;
  else if (std::fabs(theta) > 1e150)
    t = 0.5 / theta;
  else
    t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex sp = s * phase;            // s e^{i phi}
  const Complex sm = s * std::conj(phase); // s e^{-i phi}

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - sm * akq;
    a(k, q) = sp * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - sp * aqk;
    a(q, k) = sm * apk + c * aqk;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - sm * vkq;
    v(k, q) = sp * vkp + c * vkq;
  }
}

} // namespace

HermitianMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = size();
  Matrix ul = u;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      ul(i, j) *= lambda[j];
  return HermitianMatrix(ul * u.adjoint(), 1e-8);
}

void normalize_column_phases(Matrix& u) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const double m = std::abs(u(i, j));
      if (m > best_abs) {
        best_abs = m;
        best = i;
      }
    }
    if (best_abs <= 0.0)
      continue;
    const Complex z = std::conj(u(best, j)) / best_abs;
    for (std::size_t i = 0; i < u.rows(); ++i)
      u(i, j) *= z;
    u(best, j) = Complex(u(best, j).real(), 0.0);
  }
}

SpectralDecomposition eigh(const HermitianMatrix& h, JacobiOptions opts) {
  const std::size_t n = h.size();
  const double tol = opts.tol > 0.0 ? opts.tol : 1e-13 * static_cast<double>(std::max<std::size_t>(n, 1));
  if (tol < 1e-15)
    throw InvalidArgument("eigh tolerance must be at least 1e-15");

  Matrix a = h.matrix();
  Matrix v = Matrix::identity(n);
  const double target = tol * a.frobenius_norm();

  double off = off_diagonal_mass(a);
  int sweep = 0;
  while (off > target) {
    if (sweep == opts.max_sweeps)
      throw ConvergenceError("Jacobi did not converge after " +
                                 std::to_string(opts.max_sweeps) +
                                 " sweeps; off-diagonal mass " +
                                 std::to_string(off),
                             off);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        rotate(a, v, p, q);
    ++sweep;
    off = off_diagonal_mass(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  SpectralDecomposition d{Matrix(n, n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    d.lambda[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i)
      d.u(i, k) = v(i, order[k]);
  }
  normalize_column_phases(d.u);
  return d;
}

double residual(const HermitianMatrix& h, const SpectralDecomposition& d) {
  if (h.size() != d.size() || d.u.rows() != h.size() || d.u.cols() != h.size())
    throw DimensionError("residual: dimension mismatch");
  const std::size_t n = d.size();
  Matrix ul = d.u;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      ul(i, j) *= d.lambda[j];
  return operator_norm(ul * d.u.adjoint() - h.matrix());
}

} // namespace eigpert
