#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eigpert/alignment.hpp"
#include "eigpert/error.hpp"
#include "eigpert/first_order.hpp"
#include "eigpert/harness.hpp"
#include "eigpert/jacobi.hpp"
#include "eigpert/matrix_io.hpp"
#include "eigpert/norms.hpp"
#include "eigpert/rayleigh_schrodinger.hpp"
#include "eigpert/schur.hpp"

namespace py = pybind11;
using namespace eigpert;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const CArray& a) {
  if (a.ndim() != 2)
    throw DimensionError("expected a 2-d array");
  const auto r = a.unchecked<2>();
  Matrix m(static_cast<std::size_t>(r.shape(0)), static_cast<std::size_t>(r.shape(1)));
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    for (py::ssize_t j = 0; j < r.shape(1); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
  return m;
}

HermitianMatrix to_hermitian(const CArray& a) { return HermitianMatrix(to_matrix(a)); }

CArray to_array(const Matrix& m) {
  CArray out({m.rows(), m.cols()});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

AlignedPerturbation aligned(const CArray& a, const CArray& e) {
  return align(to_hermitian(a), to_hermitian(e));
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hermitian eigenvalue and eigenvector perturbation";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<DimensionError>(m, "DimensionError", error);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error);
  py::register_exception<ModeError>(m, "ModeError", error);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error);
  py::register_exception<StudyError>(m, "StudyError", error);
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", error);
  py::register_exception<GapTooSmallError>(m, "GapTooSmallError", precondition);
  py::register_exception<DegenerateDirectionError>(m, "DegenerateDirectionError",
                                                   precondition);

  m.def("parse_matrix", [](const std::string& text) { return to_array(parse_matrix(text)); },
        py::arg("text"));
  m.def("parse_hermitian",
        [](const std::string& text) { return to_array(parse_hermitian(text).matrix()); },
        py::arg("text"));
  m.def("format_matrix", [](const CArray& a) { return format_matrix(to_matrix(a)); },
        py::arg("m"));

  m.def("eigh",
        [](const CArray& h) {
          const auto d = eigh(to_hermitian(h));
          return py::make_tuple(to_array(d.lambda), to_array(d.u));
        },
        py::arg("h"), "Eigenvalues (non-increasing) and unitary eigenvectors.");
  m.def("operator_norm", [](const CArray& a) { return operator_norm(to_matrix(a)); },
        py::arg("m"));

  m.def("first_order_eigenvalues",
        [](const CArray& a, const CArray& e) {
          return to_array(first_order_eigenvalues(aligned(a, e)));
        },
        py::arg("a"), py::arg("e"));
  m.def("gershgorin_intervals",
        [](const CArray& a, const CArray& e) {
          std::vector<std::pair<double, double>> out;
          for (const auto& d : gershgorin_intervals(aligned(a, e)))
            out.emplace_back(d.center, d.radius);
          return out;
        },
        py::arg("a"), py::arg("e"), "(center, radius) per eigenvalue.");
  m.def("approx_eigenvectors",
        [](const CArray& a, const CArray& e) {
          const auto ap = aligned(a, e);
          return to_array(u_approx(ap, m_matrix(ap.base, ap.blocks)));
        },
        py::arg("a"), py::arg("e"));
  m.def("refined_eigenvalues",
        [](const CArray& a, const CArray& e, bool simplified) {
          return to_array(refined_eigenvalues(aligned(a, e), simplified
                                                                 ? SchurVariant::simplified
                                                                 : SchurVariant::full)
                              .values);
        },
        py::arg("a"), py::arg("e"), py::arg("simplified") = false);

  m.def("rs_coefficients",
        [](const CArray& a, const CArray& f) {
          const auto c = rs_coefficients(aligned(a, f));
          return py::make_tuple(to_array(c.a0), to_array(c.a1), to_array(c.a2));
        },
        py::arg("a"), py::arg("f"), "(a0, a1, a2) with xi(t) = a0 + t a1 + t^2 a2 + O(t^3).");
  m.def("expand_along_line",
        [](const CArray& a, const CArray& f) {
          const auto x = expand_along_line(aligned(a, f));
          py::dict d;
          d["u"] = to_array(x.base.u);
          d["alpha"] = to_array(x.base.lambda);
          d["f_hat"] = to_array(x.f_hat.matrix());
          d["a0"] = to_array(x.a0);
          d["a1"] = to_array(x.a1);
          d["a2"] = to_array(x.a2);
          d["n"] = to_array(x.n_mat);
          d["m_hadamard_f"] = to_array(x.m_hadamard_f);
          d["u_prime"] = to_array(x.u_prime);
          return d;
        },
        py::arg("a"), py::arg("f"));
  m.def("predict_eigensystem",
        [](const CArray& a, const CArray& f, double t) {
          const auto ap = aligned(a, f);
          const auto p = predict_eigensystem(ap, m_matrix(ap.base, ap.blocks), t);
          return py::make_tuple(to_array(p.xi_hat), to_array(p.u_hat));
        },
        py::arg("a"), py::arg("f"), py::arg("t"));

  m.def("convergence_study",
        [](const std::string& predictor, std::uint64_t seed, std::size_t n,
           std::vector<std::size_t> blocks, std::size_t trials,
           std::optional<std::vector<double>> t_grid) {
          const auto p = parse_predictor(predictor);
          if (!p)
            throw InvalidArgument("unknown predictor '" + predictor + "'");
          EnsembleConfig cfg;
          cfg.seed = seed;
          cfg.n = n;
          cfg.block_spec = std::move(blocks);
          cfg.trials = trials;
          cfg.predictor = *p;
          if (t_grid)
            cfg.t_grid = *t_grid;
          const auto rep = convergence_study(cfg);
          py::dict d;
          d["slope"] = rep.slope;
          d["mean_slope"] = rep.mean_slope;
          d["r_squared"] = rep.r_squared;
          d["failures"] = rep.failures.size();
          d["csv"] = rep.to_csv();
          return d;
        },
        py::arg("predictor"), py::arg("seed"), py::arg("n"), py::arg("blocks"),
        py::arg("trials") = 20, py::arg("t_grid") = py::none());

  m.def("worked_example_regression", [] {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& c : worked_example_regression().clauses)
      out.emplace_back(c.name, c.passed, c.detail);
    return out;
  });
}
