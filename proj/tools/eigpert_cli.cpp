// eigpert: command line front end.
//
//   eigpert eigh <matrix-file>
//   eigpert predict --order {1|2|schur|schur-simple} --a <file> --e <file> [--t <real>]
//   eigpert derivative --a <file> --f <file>
//   eigpert converge --predictor <name> --seed <u64> --n <int> --blocks <csv> --trials <int> [--tgrid <csv>]
//   eigpert paper-example
//
// Exit codes: 0 success, 1 assertion/study failure, 2 usage/parse error,
// 3 numerical precondition failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eigpert/alignment.hpp"
#include "eigpert/error.hpp"
#include "eigpert/first_order.hpp"
#include "eigpert/harness.hpp"
#include "eigpert/jacobi.hpp"
#include "eigpert/matrix_io.hpp"
#include "eigpert/rayleigh_schrodinger.hpp"
#include "eigpert/schur.hpp"

namespace {

using namespace eigpert;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kPrecondition = 3,
};

void print_values(const std::vector<double>& v) {
  for (double x : v)
    std::cout << format_real(x) << "\n";
}

int run_eigh(const std::string& path) {
  const auto d = eigh(read_hermitian_file(path));
  print_values(d.lambda);
  std::cout << format_matrix(d.u);
  return kOk;
}

int run_predict(const std::string& order, const std::string& a_path,
                const std::string& e_path, double t) {
  const auto a = read_hermitian_file(a_path);
  const auto e = read_hermitian_file(e_path);
  if (order == "2") {
    const auto ap = align(a, e);
    const auto pred = predict_eigensystem(ap, m_matrix(ap.base, ap.blocks), t);
    print_values(pred.xi_hat);
    std::cout << format_matrix(pred.u_hat);
    return kOk;
  }
  const auto ap = align(a, e.scaled(t));
  if (order == "1")
    print_values(first_order_eigenvalues(ap));
  else
    print_values(refined_eigenvalues(ap, order == "schur" ? SchurVariant::full
                                                          : SchurVariant::simplified)
                     .values);
  return kOk;
}

int run_derivative(const std::string& a_path, const std::string& f_path) {
  const auto ap = align(read_hermitian_file(a_path), read_hermitian_file(f_path));
  const auto x = expand_along_line(ap);
  std::cout << format_matrix(x.n_mat) << format_matrix(x.m_hadamard_f)
            << format_matrix(x.u_prime);
  return kOk;
}

int run_converge(const std::string& predictor, std::uint64_t seed,
                 std::size_t n, const std::vector<std::size_t>& blocks,
                 std::size_t trials, const std::vector<double>& tgrid) {
  const auto p = parse_predictor(predictor);
  if (!p) {
    std::cerr << "unknown predictor '" << predictor << "'\n";
    return kUsage;
  }
  EnsembleConfig cfg;
  cfg.seed = seed;
  cfg.n = n;
  cfg.block_spec = blocks;
  cfg.trials = trials;
  cfg.predictor = *p;
  if (!tgrid.empty())
    cfg.t_grid = tgrid;
  std::cout << convergence_study(cfg).to_csv();
  return kOk;
}

int run_worked_example() {
  const auto rep = worked_example_regression();
  std::cout << rep.to_text();
  return rep.all_passed() ? kOk : kFailure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbation expansions of Hermitian eigenvalues and eigenvectors"};
  app.require_subcommand(1);

  std::string eigh_path;
  auto* eigh_cmd = app.add_subcommand("eigh", "Jacobi eigendecomposition of a Hermitian matrix");
  eigh_cmd->add_option("matrix-file", eigh_path)->required();

  std::string order, a_path, e_path, f_path;
  double t = 1.0;
  auto* predict_cmd = app.add_subcommand("predict", "Predicted eigenvalues of A + tE");
  predict_cmd->add_option("--order", order)
      ->required()
      ->check(CLI::IsMember({"1", "2", "schur", "schur-simple"}));
  predict_cmd->add_option("--a", a_path)->required();
  predict_cmd->add_option("--e", e_path)->required();
  predict_cmd->add_option("--t", t, "scale of the perturbation")->capture_default_str();

  auto* deriv_cmd = app.add_subcommand("derivative", "N, M o F^ and U'(0) along A + tF");
  deriv_cmd->add_option("--a", a_path)->required();
  deriv_cmd->add_option("--f", f_path)->required();

  std::string predictor;
  std::uint64_t seed = 0;
  std::size_t n = 0, trials = 0;
  std::vector<std::size_t> blocks;
  std::vector<double> tgrid;
  auto* conv_cmd = app.add_subcommand("converge", "Convergence-order study, CSV on stdout");
  conv_cmd->add_option("--predictor", predictor)->required();
  conv_cmd->add_option("--seed", seed)->required();
  conv_cmd->add_option("--n", n)->required();
  conv_cmd->add_option("--blocks", blocks)->required()->delimiter(',');
  conv_cmd->add_option("--trials", trials)->required();
  conv_cmd->add_option("--tgrid", tgrid)->delimiter(',');

  auto* example_cmd = app.add_subcommand("paper-example", "Regression on the 3x3 degenerate worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eigh_cmd)
      return run_eigh(eigh_path);
    if (*predict_cmd)
      return run_predict(order, a_path, e_path, t);
    if (*deriv_cmd)
      return run_derivative(a_path, f_path);
    if (*conv_cmd)
      return run_converge(predictor, seed, n, blocks, trials, tgrid);
    if (*example_cmd)
      return run_worked_example();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
