#ifndef EIGPERT_MATRIX_IO_HPP
#define EIGPERT_MATRIX_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "eigpert/matrix.hpp"

namespace eigpert {

// Matrix text format
// ------------------
//   line 1     "n" for a square matrix or "r c" for a rectangular one
//   next lines one matrix row each, entries separated by blanks
//   entry      REAL | REAL SIGN REAL "i"      e.g. 1.5  1.5-0.25i  0+1i
//
// The writer emits 17 significant digits so every double survives a
// format/parse round trip bit for bit.

Matrix parse_matrix(std::string_view text);

/// Parses and checks Hermitian symmetry. A violation is reported as a
/// ParseError pointing at the offending entry.
HermitianMatrix parse_hermitian(std::string_view text,
                                double asymmetry_tol = kDefaultAsymmetryTolerance);

std::string format_entry(Complex z);
std::string format_matrix(const Matrix& m);
std::string format_matrix(const HermitianMatrix& h);
/// 17 significant digits, as used for eigenvalue listings and CSV output.
std::string format_real(double x);

Matrix read_matrix_file(const std::string& path);
HermitianMatrix read_hermitian_file(const std::string& path);

} // namespace eigpert

#endif
