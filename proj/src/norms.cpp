#include "eigpert/norms.hpp"

#include <algorithm>
#include <cmath>

#include "eigpert/error.hpp"
#include "eigpert/jacobi.hpp"

namespace eigpert {

double operator_norm(const Matrix& m) {
  if (!m.all_finite())
    throw InvalidArgument("operator_norm: non-finite input");
  if (m.rows() == 0 || m.cols() == 0)
    return 0.0;
  // The Gram matrix of the smaller side has the same nonzero spectrum.
  const Matrix gram = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
  const auto d = eigh(HermitianMatrix(gram, 1e-8));
  return std::sqrt(std::max(0.0, d.lambda.front()));
}

double operator_norm(const HermitianMatrix& h) {
  if (h.size() == 0)
    return 0.0;
  const auto d = eigh(h);
  return std::max(std::fabs(d.lambda.front()), std::fabs(d.lambda.back()));
}

std::vector<double> diagonal_pinv(std::span<const double> values,
                                  double threshold) {
  std::vector<double> r(values.size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::fabs(values[i]) > threshold)
      r[i] = 1.0 / values[i];
  return r;
}

} // namespace eigpert
