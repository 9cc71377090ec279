// Acceptance run: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "eigpert/alignment.hpp"
#include "eigpert/error.hpp"
#include "eigpert/first_order.hpp"
#include "eigpert/harness.hpp"
#include "eigpert/jacobi.hpp"
#include "eigpert/norms.hpp"
#include "eigpert/rayleigh_schrodinger.hpp"
#include "eigpert/schur.hpp"
#include "oracles.hpp"

using namespace eigpert;

namespace {

constexpr std::uint64_t kSeed = 20240601;

EnsembleConfig ensemble(Predictor p) {
  EnsembleConfig cfg;
  cfg.seed = kSeed;
  cfg.n = 6;
  cfg.block_spec = {2, 2, 1, 1};
  cfg.trials = 20;
  cfg.predictor = p;
  return cfg;
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

double slope_of(Predictor p) { return convergence_study(ensemble(p)).slope; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Outcome regression() {
  const auto rep = worked_example_regression();
  std::string failed;
  for (const auto& c : rep.clauses)
    if (!c.passed)
      failed += " " + c.name + " (" + c.detail + ")";
  return {rep.all_passed(), std::to_string(rep.clauses.size()) + " clauses" +
                                (failed.empty() ? "" : ", failed:" + failed)};
}

Outcome first_order_slope() {
  const double s = slope_of(Predictor::first_order);
  return {s >= 1.9, "worst slope " + num(s) + " (>= 1.9)"};
}

Outcome schur_order() {
  const double full = slope_of(Predictor::schur_full);
  const double simple = slope_of(Predictor::schur_simplified);

  // per-block error at t = 1e-2 against 10 ||B|| ||C||^2
  const auto cfg = ensemble(Predictor::schur_full);
  double worst_ratio = 0.0;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const auto inst = generate_instance(cfg, trial);
    const auto e = inst.f.scaled(1e-2);
    const auto ap = align(inst.a, e);
    const auto exact = eigh(inst.a + e).lambda;
    const auto refined = refined_eigenvalues(ap, SchurVariant::full).values;
    for (std::size_t g = 0; g < ap.blocks.groups.size(); ++g) {
      const auto s = schur_data(ap, g);
      const double bound = 10.0 * operator_norm(s.b) * std::pow(operator_norm(s.c), 2);
      for (std::size_t j : s.members) {
        const double err = std::fabs(refined[j] - exact[j]);
        worst_ratio = std::max(worst_ratio, bound > 0 ? err / bound : (err > 0 ? INFINITY : 0));
      }
    }
  }
  const bool ok = full >= 2.7 && simple >= 2.7 && worst_ratio <= 1.0;
  return {ok, "full slope " + num(full) + ", simplified slope " + num(simple) +
                  " (>= 2.7); max err / (10 ||B|| ||C||^2) at t=1e-2: " + num(worst_ratio)};
}

Outcome rs_order() {
  const double s = slope_of(Predictor::rs_second_order);
  const auto ap = align(HermitianMatrix::diagonal(std::vector<double>{3, 1}),
                        HermitianMatrix(Matrix{{0, 1}, {1, 0}}));
  const auto coeffs = rs_coefficients(ap);
  double worst = 0.0;
  for (double t = 0.1; t >= 1e-3; t /= 1.5) {
    const auto xi = coeffs.evaluate(t);
    const auto exact = oracle::eig2(3, t, 1);
    const double err = std::max(std::fabs(xi[0] - exact[0]), std::fabs(xi[1] - exact[1]));
    worst = std::max(worst, err / (2 * std::pow(t, 4)));
  }
  return {s >= 2.7 && worst <= 1.0,
          "worst slope " + num(s) + " (>= 2.7); 2x2 max err / 2t^4: " + num(worst)};
}

Outcome eigvec_order() {
  const double s = slope_of(Predictor::eigvec_first_order);
  const double fd = slope_of(Predictor::eigvec_finite_difference);
  return {s >= 1.8 && fd >= 0.9, "eigenvector slope " + num(s) + " (>= 1.8), " +
                                     "finite-difference slope " + num(fd) + " (>= 0.9)"};
}

// Structural invariants on seeded instances, checked against closed forms
// and oracle decompositions.
Outcome structural() {
  std::size_t instances = 0;
  std::string first_failure;
  auto check = [&](bool ok, const char* what) {
    if (!ok && first_failure.empty())
      first_failure = std::string(what) + " (instance " + std::to_string(instances) + ")";
  };

  const std::vector<std::vector<std::size_t>> layouts = {
      {2, 2, 1, 1}, {3, 2, 1, 1}, {1, 1, 1, 1, 1}, {4, 1}, {2, 2, 2}};
  for (std::size_t trial = 0; trial < 250; ++trial) {
    EnsembleConfig cfg;
    cfg.seed = kSeed + 1;
    cfg.block_spec = layouts[trial % layouts.size()];
    cfg.n = 0;
    for (auto m : cfg.block_spec)
      cfg.n += m;
    const auto inst = generate_instance(cfg, trial);
    const double t = std::pow(10.0, -1.0 - static_cast<double>(trial % 3));
    const auto e = inst.f.scaled(t);
    const std::size_t n = cfg.n;
    const double nd = static_cast<double>(n);
    ++instances;

    // Hermitian symmetry of inputs and of the rotated perturbation
    const auto ap = align(inst.a, e);
    bool herm = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        herm = herm && ap.e_hat(i, j) == std::conj(ap.e_hat(j, i)) &&
               (inst.a + e)(i, j) == std::conj((inst.a + e)(j, i));
    check(herm, "Hermitian symmetry");

    // oracle decomposition
    const auto d = eigh(inst.a + e);
    const double scale = std::max(1.0, operator_norm(inst.a + e));
    check(operator_norm(d.u.adjoint() * d.u - Matrix::identity(n)) <= 1e-12 * nd, "unitarity");
    check(residual(inst.a + e, d) <= 1e-12 * nd * scale, "reconstruction");
    for (std::size_t j = 1; j < n; ++j)
      check(d.lambda[j - 1] >= d.lambda[j], "ordering");
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t best = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(d.u(i, j)) > std::abs(d.u(best, j)))
          best = i;
      check(d.u(best, j).imag() == 0.0 && d.u(best, j).real() >= 0.0, "phase");
    }

    // M antisymmetry and M o E^ = commutator solution: [Lambda, M o E^] = E^o
    const auto m = m_matrix(ap.base, ap.blocks);
    bool anti = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        anti = anti && m(i, j) == -m(j, i);
    check(anti, "M antisymmetry");
    const Matrix lam = Matrix::diagonal(ap.alpha());
    const Matrix me = m.hadamard(ap.e_hat);
    check(max_abs_diff(lam * me - me * lam, ap.e_hat_off.matrix()) <= 1e-12 * ap.e_norm,
          "commutator identity");

    // skew-Hermitian N and U^* U'(0) along the unit direction F
    const auto line = expand_along_line(align(inst.a, inst.f));
    check((line.n_mat + line.n_mat.adjoint()).max_abs() <= 1e-12, "N skew-Hermitian");
    const Matrix ud = line.base.u.adjoint() * line.u_prime;
    check((ud + ud.adjoint()).max_abs() <= 1e-11, "U^* U'(0) skew-Hermitian");

    // Gershgorin containment and Weyl
    const auto discs = gershgorin_intervals(ap);
    const double en = operator_norm(e);
    for (std::size_t j = 0; j < n; ++j) {
      bool inside = false;
      for (const auto& disc : discs)
        inside = inside || std::fabs(d.lambda[j] - disc.center) <= disc.radius + 1e-12;
      check(inside, "Gershgorin containment");
      check(std::fabs(d.lambda[j] - ap.alpha()[j]) <= en * (1 + 1e-10), "Weyl bound");
    }

    // U_ap orthonormality defect against (sqrt(n) ||E|| / min gap)^2, gaps >= 1
    const auto pred = first_order_prediction(ap);
    check(pred.orthonormality_defect / (en * en) <= nd, "U_ap orthonormality");
  }
  return {first_failure.empty(),
          std::to_string(instances) + " instances" +
              (first_failure.empty() ? "" : ", first failure: " + first_failure)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s; // 0: no time limit
  std::function<Outcome()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "worked-example regression", 1.0, regression},
      {2, "first-order eigenvalue order", 10.0, first_order_slope},
      {3, "Schur-refined eigenvalue order", 0.0, schur_order},
      {4, "second-order coefficient order", 0.0, rs_order},
      {5, "first-order eigenvector order", 0.0, eigvec_order},
      {6, "structural invariants", 30.0, structural},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool timely = c.budget_s == 0.0 || secs < c.budget_s;
    const bool ok = out.passed && timely;
    failures += ok ? 0 : 1;
    std::printf("%s criterion %d (%s): %s; %.3f s", ok ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    if (c.budget_s > 0.0)
      std::printf(" (< %.0f s)", c.budget_s);
    std::printf("\n");
  }
  return failures == 0 ? 0 : 1;
}
