#include "eigpert/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "eigpert/alignment.hpp"
#include "eigpert/error.hpp"
#include "eigpert/first_order.hpp"
#include "eigpert/jacobi.hpp"
#include "eigpert/matrix_io.hpp"
#include "eigpert/norms.hpp"
#include "eigpert/rayleigh_schrodinger.hpp"
#include "eigpert/schur.hpp"

namespace eigpert {
namespace {

constexpr std::size_t kMaxFilteredPoints = 2;

struct NamedPredictor {
  Predictor p;
  std::string_view name;
};

constexpr NamedPredictor kPredictors[] = {
    {Predictor::first_order, "first_order"},
    {Predictor::schur_full, "schur_full"},
    {Predictor::schur_simplified, "schur_simplified"},
    {Predictor::rs_second_order, "rs_second_order"},
    {Predictor::eigvec_first_order, "eigvec_first_order"},
    {Predictor::u_ap_residual, "u_ap_residual"},
    {Predictor::eigvec_finite_difference, "eigvec_finite_difference"},
};

HermitianMatrix random_hermitian(SplitMix64& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.uniform(-1.0, 1.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(m);
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

double max_abs_error(const std::vector<double>& exact,
                     const std::vector<double>& predicted) {
  const auto a = sorted_desc(exact);
  const auto b = sorted_desc(predicted);
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    e = std::max(e, std::fabs(a[i] - b[i]));
  return e;
}

HermitianMatrix perturbed(const Instance& inst, double t) {
  return inst.a + inst.f.scaled(t);
}

// Oracle eigenvectors of A + tF, aligned to U_{A,F} + t U'(0).
struct EigvecComparison {
  Matrix aligned;
  Matrix base;
  Matrix u_prime;
  Matrix u_hat;
};

EigvecComparison compare_eigenvectors(const Instance& inst, double t) {
  const auto ap = align(inst.a, inst.f);
  const auto m = m_matrix(ap.base, ap.blocks);
  const auto pred = predict_eigensystem(ap, m, t);
  EigvecComparison c;
  c.base = ap.base.u;
  c.u_hat = pred.u_hat;
  c.u_prime = eigenvector_derivative(ap, m);
  c.aligned = align_eigenvectors(eigh(perturbed(inst, t)).u, pred.u_hat);
  return c;
}

std::string fmt(double x) { return format_real(x); }

} // namespace

std::string_view predictor_name(Predictor p) {
  for (const auto& np : kPredictors)
    if (np.p == p)
      return np.name;
  return "unknown";
}

std::optional<Predictor> parse_predictor(std::string_view name) {
  for (const auto& np : kPredictors)
    if (np.name == name)
      return np.p;
  return std::nullopt;
}

std::vector<double> default_t_grid() {
  return {1e-1, std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5), 1e-3};
}

void EnsembleConfig::validate() const {
  if (n == 0)
    throw InvalidArgument("ensemble dimension must be positive");
  if (block_spec.empty() ||
      std::find(block_spec.begin(), block_spec.end(), 0u) != block_spec.end())
    throw InvalidArgument("block multiplicities must be positive");
  if (std::accumulate(block_spec.begin(), block_spec.end(), std::size_t{0}) != n)
    throw InvalidArgument("block multiplicities must sum to n = " +
                          std::to_string(n));
  if (t_grid.empty())
    throw InvalidArgument("t grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i]))
      throw InvalidArgument("t grid entries must be positive and finite");
    if (i > 0 && !(t_grid[i] < t_grid[i - 1]))
      throw InvalidArgument("t grid must be strictly decreasing");
  }
  if (trials == 0)
    throw InvalidArgument("at least one trial is required");
}

Instance generate_instance(const EnsembleConfig& cfg, std::size_t trial) {
  cfg.validate();
  SplitMix64 seeder(cfg.seed);
  std::uint64_t stream = seeder.next();
  for (std::size_t k = 0; k <= trial; ++k)
    stream = seeder.next();
  SplitMix64 rng(stream);

  const std::size_t n = cfg.n;
  const Matrix q = eigh(random_hermitian(rng, n)).u;

  std::vector<double> reps(cfg.block_spec.size());
  for (std::size_t g = 1; g < reps.size(); ++g)
    reps[g] = reps[g - 1] - rng.uniform(1.0, 2.0);
  const double mid = 0.5 * (reps.front() + reps.back());
  std::vector<double> lambda;
  for (std::size_t g = 0; g < reps.size(); ++g)
    lambda.insert(lambda.end(), cfg.block_spec[g], reps[g] - mid);

  Matrix ql = q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      ql(i, j) *= lambda[j];

  const HermitianMatrix f = random_hermitian(rng, n);
  return {HermitianMatrix(ql * q.adjoint()), f.scaled(1.0 / operator_norm(f))};
}

Matrix align_eigenvectors(const Matrix& oracle, const Matrix& reference) {
  if (oracle.rows() != reference.rows() || oracle.cols() != reference.cols())
    throw DimensionError("align_eigenvectors: dimension mismatch");
  const std::size_t n = oracle.cols();
  const Matrix overlap = reference.adjoint() * oracle; // (i,k) = <ref_i, orc_k>

  std::vector<bool> ref_used(n, false), orc_used(n, false);
  std::vector<std::size_t> match(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    double best = -1.0;
    std::size_t bi = 0, bk = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (ref_used[i])
        continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (orc_used[k])
          continue;
        const double v = std::abs(overlap(i, k));
        if (v > best) {
          best = v;
          bi = i;
          bk = k;
        }
      }
    }
    ref_used[bi] = orc_used[bk] = true;
    match[bi] = bk;
  }

  Matrix out(oracle.rows(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex ip = overlap(i, match[i]);
    const Complex phase = std::abs(ip) > 0.0 ? std::conj(ip) / std::abs(ip) : 1.0;
    for (std::size_t r = 0; r < oracle.rows(); ++r)
      out(r, i) = oracle(r, match[i]) * phase;
  }
  return out;
}

PowerLawFit fit_power_law(const std::vector<double>& t,
                          const std::vector<double>& error, double floor) {
  if (t.size() != error.size())
    throw InvalidArgument("fit_power_law: size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (error[i] > floor && t[i] > 0.0) {
      x.push_back(std::log(t[i]));
      y.push_back(std::log(error[i]));
    }
  if (x.size() < 2)
    throw StudyError("fewer than two points above the noise floor");

  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0)
    throw StudyError("degenerate t grid");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points_used = x.size();
  return fit;
}

std::string ConvergenceReport::to_csv() const {
  std::string out = "trial,t,error\n";
  for (const auto& r : rows)
    out += std::to_string(r.trial) + "," + fmt(r.t) + "," + fmt(r.error) + "\n";
  out += "# slope=" + fmt(slope) + " r2=" + fmt(r_squared) + "\n";
  return out;
}

ErrorModel predictor_error_model(Predictor p) {
  switch (p) {
  case Predictor::first_order:
    return [](const Instance& inst, double t) {
      const auto e = inst.f.scaled(t);
      const auto ap = align(inst.a, e);
      return max_abs_error(eigh(inst.a + e).lambda, first_order_eigenvalues(ap));
    };
  case Predictor::schur_full:
  case Predictor::schur_simplified: {
    const auto variant =
        p == Predictor::schur_full ? SchurVariant::full : SchurVariant::simplified;
    return [variant](const Instance& inst, double t) {
      const auto e = inst.f.scaled(t);
      const auto ap = align(inst.a, e);
      return max_abs_error(eigh(inst.a + e).lambda,
                           refined_eigenvalues(ap, variant).values);
    };
  }
  case Predictor::rs_second_order:
    return [](const Instance& inst, double t) {
      const auto ap = align(inst.a, inst.f);
      return max_abs_error(eigh(perturbed(inst, t)).lambda,
                           rs_coefficients(ap).evaluate(t));
    };
  case Predictor::eigvec_first_order:
    return [](const Instance& inst, double t) {
      const auto c = compare_eigenvectors(inst, t);
      return operator_norm(c.aligned - c.u_hat);
    };
  case Predictor::eigvec_finite_difference:
    return [](const Instance& inst, double t) {
      const auto c = compare_eigenvectors(inst, t);
      return operator_norm((1.0 / t) * (c.aligned - c.base) - c.u_prime);
    };
  case Predictor::u_ap_residual:
    return [](const Instance& inst, double t) {
      const auto ap = align(inst.a, inst.f.scaled(t));
      return approx_decomposition_residual(ap, m_matrix(ap.base, ap.blocks));
    };
  }
  throw InvalidArgument("unknown predictor");
}

ConvergenceReport convergence_study(const EnsembleConfig& cfg) {
  return convergence_study(cfg, predictor_error_model(cfg.predictor));
}

ConvergenceReport convergence_study(const EnsembleConfig& cfg,
                                    const ErrorModel& model) {
  cfg.validate();
  ConvergenceReport rep;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double worst = std::numeric_limits<double>::infinity();
  double error_sum = 0.0;

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const Instance inst = generate_instance(cfg, trial);
    std::vector<double> errors;
    try {
      for (double t : cfg.t_grid)
        errors.push_back(model(inst, t));
    } catch (const PreconditionError& e) {
      rep.failures.push_back({trial, e.what()});
      continue;
    }

    const double floor = 1e3 * eps * std::max(1.0, operator_norm(inst.a));
    const auto kept = static_cast<std::size_t>(std::count_if(
        errors.begin(), errors.end(), [&](double e) { return e > floor; }));
    if (errors.size() - kept > kMaxFilteredPoints)
      throw StudyError("trial " + std::to_string(trial) + ": noise floor " +
                       fmt(floor) + " removes " +
                       std::to_string(errors.size() - kept) + " of " +
                       std::to_string(errors.size()) + " grid points");

    const PowerLawFit fit = fit_power_law(cfg.t_grid, errors, floor);
    for (std::size_t k = 0; k < errors.size(); ++k) {
      rep.rows.push_back({trial, cfg.t_grid[k], errors[k]});
      error_sum += errors[k];
    }
    rep.trial_fits.push_back(fit);
    rep.fitted_trials.push_back(trial);
    if (fit.slope < worst) {
      worst = fit.slope;
      rep.slope = fit.slope;
      rep.intercept = fit.intercept;
      rep.r_squared = fit.r_squared;
    }
  }

  if (2 * rep.failures.size() > cfg.trials)
    throw StudyError(std::to_string(rep.failures.size()) + " of " +
                     std::to_string(cfg.trials) +
                     " trials failed their preconditions; first: " +
                     rep.failures.front().reason);
  if (rep.trial_fits.empty())
    throw StudyError("no trial produced a fit");

  double s = 0.0;
  for (const auto& f : rep.trial_fits)
    s += f.slope;
  rep.mean_slope = s / static_cast<double>(rep.trial_fits.size());
  rep.mean_error = error_sum / static_cast<double>(rep.rows.size());
  return rep;
}

bool RegressionReport::all_passed() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const RegressionClause& c) { return c.passed; });
}

std::string RegressionReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : clauses)
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  os << (all_passed() ? "all clauses passed" : "regression FAILED") << "\n";
  return os.str();
}

RegressionReport worked_example_regression() {
  const HermitianMatrix a = HermitianMatrix::diagonal(std::vector<double>{0, 0, 1});
  const HermitianMatrix f(Matrix{{1, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  const Matrix n_expected{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}};
  const Matrix u_prime_expected{{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}};

  RegressionReport rep;
  auto add = [&rep](std::string name, bool ok, std::string detail) {
    rep.clauses.push_back({std::move(name), ok, std::move(detail)});
  };

  // (i) Schur complement of the double eigenvalue 0, in the coordinates of A.
  {
    double worst = 0.0;
    for (double t : {0.1, 0.01}) {
      const auto ap = align(a, f.scaled(t));
      std::size_t g = 0;
      while (std::fabs(ap.blocks.groups[g].value) > 0.5)
        ++g;
      const SchurData s = schur_data(ap, g);
      const Matrix v = ap.base.u.select(std::vector<std::size_t>{0, 1, 2}, s.members);
      const Matrix b = (v * s.b.matrix() * v.adjoint()).block(0, 0, 2, 2);
      const Matrix expected{{t - t * t, -t * t}, {-t * t, -t * t}};
      worst = std::max(worst, max_abs_diff(b, expected));
    }
    add("schur-complement", worst <= 1e-10,
        "max deviation from [[t-t^2,-t^2],[-t^2,-t^2]] at t=0.1,0.01: " + fmt(worst));
  }

  const auto ap = align(a, f);
  const auto x = expand_along_line(ap);
  const Matrix& u = ap.base.u;

  // (ii) N, mapped back to the coordinates where U_{A,F} = I.
  {
    const double dev = max_abs_diff(u * x.n_mat * u.adjoint(), n_expected);
    add("n-matrix", dev <= 1e-10, "max deviation from expected N: " + fmt(dev));
  }
  // (iii) U'(0)
  const Matrix u_prime = x.u_prime * u.adjoint();
  {
    const double dev = max_abs_diff(u_prime, u_prime_expected);
    add("eigenvector-derivative", dev <= 1e-10,
        "max deviation from expected U'(0): " + fmt(dev));
  }
  // (iv) eigenvectors of A + 0.01 F against I + 0.01 U'(0), 3 decimals
  {
    const double t = 0.01;
    const Matrix predicted = u + t * x.u_prime;
    const Matrix aligned =
        align_eigenvectors(eigh(a + f.scaled(t)).u, predicted) * u.adjoint();
    const Matrix expected = Matrix::identity(3) + t * u_prime_expected;
    const double dev = max_abs_diff(aligned, expected);
    add("eigenvectors-t=0.01", dev <= 5e-4,
        "max entrywise deviation from I + 0.01 U'(0): " + fmt(dev) +
            " (limit 5e-4)");
  }
  // (v) -M o F is not the derivative: the gap tends to ||N||_F = sqrt(2).
  {
    const double t = 1e-3;
    const Matrix wrong = u - t * (u * x.m_hadamard_f);
    const Matrix aligned = align_eigenvectors(eigh(a + f.scaled(t)).u, wrong);
    const double ratio = (aligned - wrong).frobenius_norm() / t;
    add("not-minus-m-hadamard-f", std::fabs(ratio - std::sqrt(2.0)) <= 0.05,
        "||U(t) - (I - t M o F)||_F / t at t=1e-3: " + fmt(ratio) +
            " (expected sqrt(2) within 0.05)");
  }
  return rep;
}

} // namespace eigpert
