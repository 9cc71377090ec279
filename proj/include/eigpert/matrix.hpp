#ifndef EIGPERT_MATRIX_HPP
#define EIGPERT_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eigpert {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Zero-sized dimensions are allowed so
/// that empty off-diagonal blocks need no special casing.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  Matrix adjoint() const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
               std::size_t ncols) const;
  /// Submatrix with the given row and column index lists.
  Matrix select(std::span<const std::size_t> row_idx,
                std::span<const std::size_t> col_idx) const;
  std::vector<Complex> column(std::size_t j) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  bool all_finite() const noexcept;
  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(Matrix a, Complex s);

/// Entrywise product with a real matrix given row-major.
Matrix hadamard(std::span<const double> real_rowmajor, const Matrix& m);

/// Solves a * x = b by Gaussian elimination with partial pivoting.
/// Throws PreconditionError when a is numerically singular.
Matrix solve(const Matrix& a, const Matrix& b);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Default relative tolerance above which asymmetric input is rejected.
inline constexpr double kDefaultAsymmetryTolerance = 1e-12;

/// Dense Hermitian matrix. Storage is exactly conjugate-symmetric and the
/// diagonal is exactly real.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  /// Symmetrizes (m + m*)/2. Input whose asymmetry exceeds
  /// asymmetry_tol * max(1, max|m_ij|) is rejected, as is non-finite input.
  explicit HermitianMatrix(const Matrix& m,
                           double asymmetry_tol = kDefaultAsymmetryTolerance);

  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t size() const noexcept { return m_.rows(); }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return m_(i, j);
  }
  const Matrix& matrix() const noexcept { return m_; }
  std::vector<double> real_diagonal() const;

  /// Principal submatrix on an index list.
  HermitianMatrix principal(std::span<const std::size_t> idx) const;
  /// u* h u, symmetrized.
  HermitianMatrix congruence(const Matrix& u) const;

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix scaled(double s) const;

  friend bool operator==(const HermitianMatrix&,
                         const HermitianMatrix&) = default;

private:
  struct Trusted {};
  HermitianMatrix(Matrix m, Trusted);
  static Matrix symmetrize(const Matrix& m);

  Matrix m_;
};

} // namespace eigpert

#endif
