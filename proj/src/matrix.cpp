#include "eigpert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigpert/error.hpp"

namespace eigpert {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw DimensionError("matrix entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    m(i, i) = values[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r(j, i) = std::conj((*this)(i, j));
  return r;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_)
    throw DimensionError("block out of range");
  Matrix r(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      r(i, j) = (*this)(row0 + i, col0 + j);
  return r;
}

Matrix Matrix::select(std::span<const std::size_t> row_idx,
                      std::span<const std::size_t> col_idx) const {
  Matrix r(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (row_idx[i] >= rows_ || col_idx[j] >= cols_)
        throw DimensionError("index out of range in select");
      r(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
  return r;
}

std::vector<Complex> Matrix::column(std::size_t j) const {
  std::vector<Complex> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    c[i] = (*this)(i, j);
  return c;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("dimension mismatch in addition");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("dimension mismatch in subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k)
    data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_)
    z *= s;
  return *this;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_)
    m = std::max(m, std::abs(z));
  return m;
}

double Matrix::frobenius_norm() const noexcept {
  // scaled accumulation keeps tiny and huge entries from under/overflowing
  const double scale = max_abs();
  if (scale == 0.0)
    return 0.0;
  double sum = 0.0;
  for (const auto& z : data_)
    sum += std::norm(z / scale);
  return scale * std::sqrt(sum);
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("dimension mismatch in product: " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{})
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        r(i, j) += aik * b(k, j);
    }
  return r;
}

Matrix operator*(Complex s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, Complex s) { return a *= s; }

Matrix hadamard(std::span<const double> real_rowmajor, const Matrix& m) {
  if (real_rowmajor.size() != m.rows() * m.cols())
    throw DimensionError("dimension mismatch in Hadamard product");
  Matrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = real_rowmajor[i * m.cols() + j] * m(i, j);
  return r;
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows())
    throw DimensionError("dimension mismatch in solve");
  const std::size_t n = a.rows();
  Matrix lu = a;
  Matrix x = b;
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k)))
        piv = i;
    if (std::abs(lu(piv, k)) <= 1e-14 * scale)
      throw PreconditionError("singular matrix in solve");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j)
        std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      if (f == Complex{})
        continue;
      for (std::size_t j = k; j < n; ++j)
        lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j)
        x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Complex s = x(k, j);
      for (std::size_t i = k + 1; i < n; ++i)
        s -= lu(k, i) * x(i, j);
      x(k, j) = s / lu(k, k);
    }
  }
  return x;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).max_abs();
}

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

Matrix HermitianMatrix::symmetrize(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

HermitianMatrix::HermitianMatrix(const Matrix& m, double asymmetry_tol) {
  if (!m.square())
    throw DimensionError("Hermitian matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  if (!m.all_finite())
    throw InvalidArgument("non-finite entry in Hermitian matrix");
  const std::size_t n = m.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
  const double limit = asymmetry_tol * std::max(1.0, m.max_abs());
  if (asym > limit)
    throw InvalidArgument("matrix is not Hermitian: asymmetry " +
                          std::to_string(asym) + " exceeds " +
                          std::to_string(limit));
  m_ = symmetrize(m);
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  return HermitianMatrix(Matrix(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  for (double v : values)
    if (!std::isfinite(v))
      throw InvalidArgument("non-finite diagonal entry");
  return HermitianMatrix(Matrix::diagonal(values), Trusted{});
}

std::vector<double> HermitianMatrix::real_diagonal() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < size(); ++i)
    d[i] = m_(i, i).real();
  return d;
}

HermitianMatrix HermitianMatrix::principal(
    std::span<const std::size_t> idx) const {
  return HermitianMatrix(m_.select(idx, idx), Trusted{});
}

HermitianMatrix HermitianMatrix::congruence(const Matrix& u) const {
  Matrix r = u.adjoint() * m_ * u;
  if (!r.all_finite())
    throw InvalidArgument("non-finite result in congruence");
  return HermitianMatrix(symmetrize(r), Trusted{});
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  return HermitianMatrix(m_ + other.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  return HermitianMatrix(m_ - other.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::scaled(double s) const {
  if (!std::isfinite(s))
    throw InvalidArgument("non-finite scale factor");
  return HermitianMatrix(s * m_, Trusted{});
}

} // namespace eigpert
