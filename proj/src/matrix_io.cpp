#include "eigpert/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "eigpert/error.hpp"

namespace eigpert {
namespace {

struct Token {
  std::string_view text;
  std::size_t column; // 1-based
};

std::vector<Token> split_blanks(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
      ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t')
      ++i;
    if (i > start)
      out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

// Parses a real literal at the front of s; returns characters consumed,
// or 0 on failure. A leading '+' is accepted.
std::size_t parse_real(std::string_view s, double& out) {
  std::size_t skip = 0;
  if (!s.empty() && s.front() == '+') {
    if (s.size() > 1 && s[1] == '-')
      return 0;
    skip = 1;
  }
  const char* first = s.data() + skip;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
  if (ec != std::errc{} || ptr == first)
    return 0;
  return static_cast<std::size_t>(ptr - s.data());
}

Complex parse_entry(const Token& tok, std::size_t line) {
  std::string_view s = tok.text;
  double re = 0.0;
  const std::size_t used = parse_real(s, re);
  if (used == 0)
    throw ParseError("malformed entry '" + std::string(s) + "'", line,
                     tok.column);
  if (!std::isfinite(re))
    throw ParseError("non-finite value '" + std::string(s) + "'", line,
                     tok.column);
  s.remove_prefix(used);
  if (s.empty())
    return {re, 0.0};

  const std::size_t imag_col = tok.column + used;
  if (s.front() != '+' && s.front() != '-')
    throw ParseError("malformed entry '" + std::string(tok.text) + "'", line,
                     imag_col);
  const bool negative = s.front() == '-';
  s.remove_prefix(1);
  if (s.size() < 2 || s.back() != 'i' || s.front() == '+' || s.front() == '-')
    throw ParseError("malformed imaginary part in '" + std::string(tok.text) +
                         "'",
                     line, imag_col);
  s.remove_suffix(1);
  double im = 0.0;
  const char* first = s.data();
  auto [ptr, ec] =
      std::from_chars(first, first + s.size(), im, std::chars_format::general);
  if (ec != std::errc{} || ptr != first + s.size())
    throw ParseError("malformed imaginary part in '" + std::string(tok.text) +
                         "'",
                     line, imag_col);
  if (!std::isfinite(im))
    throw ParseError("non-finite value '" + std::string(tok.text) + "'", line,
                     tok.column);
  return {re, negative ? -im : im};
}

std::size_t parse_dimension(const Token& tok, std::size_t line) {
  std::size_t v = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || v == 0)
    throw ParseError("expected a positive integer dimension, got '" +
                         std::string(tok.text) + "'",
                     line, tok.column);
  return v;
}

struct Parsed {
  Matrix m;
  std::vector<std::vector<std::size_t>> columns; // token columns per row
};

Parsed parse_impl(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || is_blank(lines[0]))
    throw ParseError("missing dimension line", 1, 0);

  const auto header = split_blanks(lines[0]);
  if (header.size() > 2)
    throw ParseError("dimension line must hold 'n' or 'r c'", 1,
                     header[2].column);
  const std::size_t rows = parse_dimension(header[0], 1);
  const std::size_t cols =
      header.size() == 2 ? parse_dimension(header[1], 1) : rows;

  Parsed out{Matrix(rows, cols), {}};
  out.columns.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t lineno = r + 2;
    if (r + 1 >= lines.size())
      throw ParseError("expected " + std::to_string(rows) + " rows, got " +
                           std::to_string(r),
                       lineno, 0);
    const auto toks = split_blanks(lines[r + 1]);
    if (toks.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " entries, got " +
                           std::to_string(toks.size()),
                       lineno, toks.size() > cols ? toks[cols].column : 0);
    for (std::size_t c = 0; c < cols; ++c) {
      out.m(r, c) = parse_entry(toks[c], lineno);
      out.columns[r].push_back(toks[c].column);
    }
  }
  for (std::size_t k = rows + 1; k < lines.size(); ++k)
    if (!is_blank(lines[k]))
      throw ParseError("unexpected content after the last row", k + 1, 1);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

Matrix parse_matrix(std::string_view text) { return parse_impl(text).m; }

HermitianMatrix parse_hermitian(std::string_view text, double asymmetry_tol) {
  Parsed p = parse_impl(text);
  const Matrix& m = p.m;
  if (!m.square())
    throw ParseError("Hermitian input must be square", 1, 0);
  const double limit = asymmetry_tol * std::max(1.0, m.max_abs());
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double d = std::abs(m(i, j) - std::conj(m(j, i)));
      if (d > worst) {
        worst = d;
        wi = i;
        wj = j;
      }
    }
  if (worst > limit) {
    const std::string what =
        wi == wj ? "non-real diagonal entry"
                 : "entry is not the conjugate of its transpose partner";
    throw ParseError(what, wi + 2, p.columns[wi][wj]);
  }
  return HermitianMatrix(m, asymmetry_tol);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_entry(Complex z) {
  std::string s = format_real(z.real());
  if (z.imag() == 0.0 && !std::signbit(z.imag()))
    return s;
  s += std::signbit(z.imag()) ? '-' : '+';
  s += format_real(std::fabs(z.imag()));
  s += 'i';
  return s;
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  if (m.square())
    out = std::to_string(m.rows()) + "\n";
  else
    out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j)
        out += ' ';
      out += format_entry(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_matrix(const HermitianMatrix& h) {
  return format_matrix(h.matrix());
}

Matrix read_matrix_file(const std::string& path) {
  return parse_matrix(read_file(path));
}

HermitianMatrix read_hermitian_file(const std::string& path) {
  return parse_hermitian(read_file(path));
}

} // namespace eigpert
