#ifndef EIGPERT_HARNESS_HPP
#define EIGPERT_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigpert/matrix.hpp"

namespace eigpert {

/// SplitMix64 (Steele, Lea, Flood). Deterministic across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

private:
  std::uint64_t state_;
};

enum class Predictor {
  first_order,
  schur_full,
  schur_simplified,
  rs_second_order,
  eigvec_first_order,
  u_ap_residual,
  /// ||(aligned U(t) - U_{A,F}) / t - U'(0)||
  eigvec_finite_difference,
};

std::string_view predictor_name(Predictor p);
std::optional<Predictor> parse_predictor(std::string_view name);

/// 1e-1, 10^-1.5, 1e-2, 10^-2.5, 1e-3
std::vector<double> default_t_grid();

struct EnsembleConfig {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<std::size_t> block_spec;
  std::vector<double> t_grid = default_t_grid();
  std::size_t trials = 1;
  Predictor predictor = Predictor::first_order;

  /// Throws InvalidArgument unless sum(block_spec) = n, t_grid is positive
  /// and strictly decreasing, and trials >= 1.
  void validate() const;
};

struct Instance {
  HermitianMatrix a;
  HermitianMatrix f; // unit operator norm
};

/// A = Q diag(lambda) Q^* with the multiplicities of cfg.block_spec
/// (distinct values at least 1 apart, in block_spec order from the top)
/// and Q the eigenvectors of a random Hermitian draw. Bit-identical for
/// identical (cfg.seed, cfg.n, cfg.block_spec, trial).
Instance generate_instance(const EnsembleConfig& cfg, std::size_t trial);

/// Permutes and phase-rotates the columns of `oracle` to best match
/// `reference`: greedy assignment on |<reference_i, oracle_k>| (largest
/// first, ties to the lowest indices), then each column rotated so its
/// inner product with the matched reference column is real nonnegative.
Matrix align_eigenvectors(const Matrix& oracle, const Matrix& reference);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
};

/// Least squares of log(error) on log(t) over points with error > floor.
/// Throws StudyError when fewer than two points survive.
PowerLawFit fit_power_law(const std::vector<double>& t,
                          const std::vector<double>& error, double floor);

struct ConvergenceRow {
  std::size_t trial = 0;
  double t = 0.0;
  double error = 0.0;
};

struct TrialFailure {
  std::size_t trial = 0;
  std::string reason;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;  // sorted by (trial, grid position)
  std::vector<PowerLawFit> trial_fits; // one per successful trial
  std::vector<std::size_t> fitted_trials;
  std::vector<TrialFailure> failures;
  /// Worst (smallest) trial slope, with that trial's intercept and r^2.
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double mean_slope = 0.0;
  /// Mean error over all rows; informational.
  double mean_error = 0.0;

  /// "trial,t,error" rows followed by "# slope=<v> r2=<v>".
  std::string to_csv() const;
};

/// Error of a predictor on A + tF against the oracle. Throwing a
/// PreconditionError marks the trial as failed.
using ErrorModel = std::function<double(const Instance&, double t)>;

ErrorModel predictor_error_model(Predictor p);

/// Runs every trial over the t grid, fits log(error) against log(t) per
/// trial after dropping points at or below 1e3 * eps * max(1, ||A||), and
/// reports the worst slope. Errors out when more than half the trials fail
/// or when the noise floor removes more than two grid points of a trial.
ConvergenceReport convergence_study(const EnsembleConfig& cfg);
ConvergenceReport convergence_study(const EnsembleConfig& cfg,
                                    const ErrorModel& model);

struct RegressionClause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RegressionReport {
  std::vector<RegressionClause> clauses;
  bool all_passed() const;
  std::string to_text() const;
};

/// The 3x3 example A = diag(0, 0, 1), F = [[1,0,1],[0,0,1],[1,1,0]]:
/// checks the Schur complement, N, U'(0), the eigenvectors of A + 0.01 F,
/// and that -M o F is not the eigenvector derivative.
RegressionReport worked_example_regression();

} // namespace eigpert

#endif
