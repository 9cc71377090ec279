#include "doctest.h"

#include <cmath>
#include <random>

#include "eigpert/alignment.hpp"
#include "eigpert/error.hpp"
#include "eigpert/harness.hpp"
#include "eigpert/norms.hpp"
#include "oracles.hpp"

using namespace eigpert;

namespace {

using Groups = std::vector<std::pair<std::size_t, std::size_t>>;

Groups layout(const BlockStructure& b) {
  Groups g;
  for (const auto& grp : b.groups)
    g.emplace_back(grp.first, grp.size);
  return g;
}

const HermitianMatrix kExampleA = HermitianMatrix::diagonal(std::vector<double>{0, 0, 1});
const HermitianMatrix kExampleF(Matrix{{1, 0, 1}, {0, 0, 1}, {1, 1, 0}});

Instance degenerate_instance(std::uint64_t seed, std::size_t trial) {
  EnsembleConfig cfg;
  cfg.seed = seed;
  cfg.n = 6;
  cfg.block_spec = {2, 2, 1, 1};
  return generate_instance(cfg, trial);
}

} // namespace

TEST_SUITE("alignment") {

TEST_CASE("grouping examples") {
  CHECK(layout(group_eigenvalues(std::vector<double>{5, 5, 3}, 1e-8)) == Groups{{0, 2}, {2, 1}});
  CHECK(layout(group_eigenvalues(std::vector<double>{1, 0.999, 0}, 1e-8)) ==
        Groups{{0, 1}, {1, 1}, {2, 1}});
  CHECK(layout(group_eigenvalues(std::vector<double>{1, 0, 0}, 1e-8)) == Groups{{0, 1}, {1, 2}});
  // tolerance boundary joins the earlier group
  CHECK(layout(group_eigenvalues(std::vector<double>{1.0, 0.5, 0.0}, 0.5)) == Groups{{0, 3}});
  CHECK_THROWS_AS(group_eigenvalues(std::vector<double>{0, 1}, 1e-8), InvalidArgument);
}

TEST_CASE("property: groups partition and gaps exceed the tolerance") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> level(0, 4);
  std::uniform_real_distribution<double> jitter(-1e-12, 1e-12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + trial % 9);
    for (auto& x : v)
      x = level(rng) + jitter(rng);
    std::sort(v.begin(), v.end(), std::greater<>());
    const auto b = group_eigenvalues(v, 1e-8);
    std::size_t next = 0;
    for (std::size_t g = 0; g < b.groups.size(); ++g) {
      REQUIRE(b.groups[g].first == next);
      next = b.groups[g].end();
      REQUIRE(v[b.groups[g].first] - v[next - 1] <= 1e-8 * 4);
      if (g > 0)
        REQUIRE(v[b.groups[g - 1].end() - 1] - v[b.groups[g].first] > 1e-8 * 4);
    }
    REQUIRE(next == v.size());
  }
}

TEST_CASE("conjugation examples") {
  std::mt19937_64 rng(1);
  const auto e = oracle::random_hermitian(rng, 3);
  const SpectralDecomposition identity{Matrix::identity(3), {3, 2, 1}};
  CHECK(conjugate_to_eigenbasis(identity, e).e_hat == e);

  const auto zero = conjugate_to_eigenbasis(identity, HermitianMatrix::zero(3));
  CHECK(zero.e_hat == HermitianMatrix::zero(3));
  CHECK(zero.e_hat_diag == std::vector<double>{0, 0, 0});
  CHECK(zero.e_hat_off == HermitianMatrix::zero(3));

  const auto a = HermitianMatrix::diagonal(std::vector<double>{3, 1});
  const HermitianMatrix e2(Matrix{{0, 0.1}, {0.1, 0}});
  const auto ap = conjugate_to_eigenbasis(eigh(a), e2);
  CHECK(ap.mode == AlignmentMode::raw);
  CHECK(ap.e_hat == e2);
  CHECK(ap.e_hat_diag == std::vector<double>{0, 0});

  CHECK_THROWS_AS(conjugate_to_eigenbasis(identity, HermitianMatrix::zero(2)), DimensionError);
}

TEST_CASE("property: conjugation preserves the norm and splits exactly") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto a = oracle::random_hermitian(rng, n);
    const auto e = oracle::random_hermitian(rng, n);
    const auto ap = conjugate_to_eigenbasis(eigh(a), e);
    REQUIRE(std::fabs(ap.e_norm - operator_norm(e)) <= 1e-12 * operator_norm(e));
    const auto recomputed = ap.base.u.adjoint() * e.matrix() * ap.base.u;
    REQUIRE(max_abs_diff(recomputed, ap.e_hat.matrix()) <= 1e-12 * ap.e_norm);
    const Matrix sum = Matrix::diagonal(ap.e_hat_diag) + ap.e_hat_off.matrix();
    REQUIRE(sum == ap.e_hat.matrix());
    for (std::size_t i = 0; i < n; ++i)
      REQUIRE(ap.e_hat_off(i, i) == Complex{});
  }
}

TEST_CASE("block-wise diagonalization of the zero matrix's eigenspace") {
  const auto a = HermitianMatrix::zero(2);
  const HermitianMatrix e(Matrix{{0, 1}, {1, 0}});
  const auto ap = blockwise_diagonalize(conjugate_to_eigenbasis(eigh(a), e));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(ap.base.u, Matrix{{r, r}, {r, -r}}) < 1e-15);
  CHECK(max_abs_diff(ap.e_hat.matrix(), Matrix{{1, 0}, {0, -1}}) < 1e-15);
  CHECK(ap.mode == AlignmentMode::blockwise_diagonal);
  CHECK_FALSE(ap.tied_diagonals);
}

TEST_CASE("singleton blocks leave the basis alone") {
  std::mt19937_64 rng(12);
  const auto a = oracle::random_hermitian(rng, 5);
  const auto e = oracle::random_hermitian(rng, 5);
  const auto raw = conjugate_to_eigenbasis(eigh(a), e);
  const auto bd = blockwise_diagonalize(raw);
  CHECK(bd.base.u == raw.base.u);
  CHECK(bd.e_hat == raw.e_hat);
}

TEST_CASE("worked example keeps its basis and flags no ties") {
  const auto ap = align(kExampleA, kExampleF);
  CHECK(ap.base.u == oracle::permutation({2, 0, 1}));
  CHECK(ap.e_hat_diag == std::vector<double>{0, 1, 0});
  CHECK_FALSE(ap.tied_diagonals);
  // E = 0 ties every multi-element block
  CHECK(align(kExampleA, HermitianMatrix::zero(3)).tied_diagonals);
}

TEST_CASE("property: block-wise diagonalization invariants") {
  for (std::size_t trial = 0; trial < 40; ++trial) {
    const auto inst = degenerate_instance(500, trial);
    const auto e = inst.f.scaled(0.05);
    const auto raw = conjugate_to_eigenbasis(eigh(inst.a), e);
    const auto bd = blockwise_diagonalize(raw);
    const double en = bd.e_norm;

    REQUIRE(layout(raw.blocks) == Groups{{0, 2}, {2, 2}, {4, 1}, {5, 1}});
    REQUIRE(bd.alpha() == raw.alpha());
    REQUIRE(residual(inst.a, bd.base) <= 1e-12 * 6 * std::max(1.0, operator_norm(inst.a)));
    REQUIRE(operator_norm(bd.base.u.adjoint() * bd.base.u - Matrix::identity(6)) <= 1e-12 * 6);
    const auto recomputed = bd.base.u.adjoint() * e.matrix() * bd.base.u;
    REQUIRE(max_abs_diff(recomputed, bd.e_hat.matrix()) <= 1e-12 * en);

    for (const auto& grp : bd.blocks.groups)
      for (std::size_t i = grp.first; i < grp.end(); ++i)
        for (std::size_t j = grp.first; j < grp.end(); ++j) {
          if (i != j)
            REQUIRE(std::abs(bd.e_hat(i, j)) <= 1e-11 * en);
          if (i < j)
            REQUIRE(bd.e_hat(i, i).real() >= bd.e_hat(j, j).real() - 1e-11 * en);
        }

    // unitary rotation keeps norm and spectrum of e_hat
    REQUIRE(std::fabs(bd.e_norm - raw.e_norm) <= 1e-12 * en);
    const auto s1 = eigh(raw.e_hat).lambda;
    const auto s2 = eigh(bd.e_hat).lambda;
    for (std::size_t i = 0; i < 6; ++i)
      REQUIRE(std::fabs(s1[i] - s2[i]) <= 1e-12 * en);

    // idempotence
    const auto again = blockwise_diagonalize(bd);
    REQUIRE(max_abs_diff(again.e_hat.matrix(), bd.e_hat.matrix()) <= 1e-11 * en);
  }
}

TEST_CASE("M matrix examples") {
  const auto m1 = m_matrix(SpectralDecomposition{Matrix::identity(2), {3, 1}},
                           group_eigenvalues(std::vector<double>{3, 1}));
  CHECK(m1.as_matrix() == Matrix{{0, 0.5}, {-0.5, 0}});

  const auto eq = SpectralDecomposition{Matrix::identity(3), {2, 2, 2}};
  CHECK(m_matrix(eq, group_eigenvalues(eq.lambda)).as_matrix() == Matrix(3, 3));

  // alpha = (0, 0, 1) listed rho-first is the non-increasing (1, 0, 0)
  // with indices taken in the order 1, 2, 0
  const auto ap = align(kExampleA, kExampleF);
  const std::vector<std::size_t> rho_first{1, 2, 0};
  const Matrix m_rho_first =
      m_matrix(ap.base, ap.blocks).as_matrix().select(rho_first, rho_first);
  CHECK(m_rho_first == Matrix{{0, 0, -1}, {0, 0, -1}, {1, 1, 0}});
}

TEST_CASE("property: M is antisymmetric, zero on blocks, and satisfies the commutator identity") {
  for (std::size_t trial = 0; trial < 40; ++trial) {
    const auto inst = degenerate_instance(600, trial);
    const auto ap = align(inst.a, inst.f.scaled(0.01));
    const auto m = m_matrix(ap.base, ap.blocks);
    const std::size_t n = ap.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        REQUIRE(m(i, j) == -m(j, i));
        if (ap.blocks.same_block(i, j))
          REQUIRE(m(i, j) == 0.0);
        else
          REQUIRE(m(i, j) == 1.0 / (ap.alpha()[i] - ap.alpha()[j]));
      }

    const Matrix lam = Matrix::diagonal(ap.alpha());
    const Matrix comm = lam * ap.e_hat.matrix() - ap.e_hat.matrix() * lam;
    REQUIRE(max_abs_diff(m.hadamard(comm), ap.e_hat_off.matrix()) <= 1e-13 * ap.e_norm);
  }
}

TEST_CASE("V_c membership examples") {
  std::mt19937_64 rng(14);
  const auto a = oracle::random_hermitian(rng, 4);
  const auto simple = align(a, oracle::random_hermitian(rng, 4).scaled(1e-4));
  const auto rep = vc_membership(simple, 1.0, 1e-8);
  CHECK(rep.member);
  CHECK(rep.blocks.empty());

  const auto ex = align(kExampleA, kExampleF.scaled(0.1));
  const auto rep2 = vc_membership(ex, 0.1, 1e-8);
  CHECK_FALSE(rep2.member);
  REQUIRE(rep2.blocks.size() == 1);
  CHECK(rep2.blocks[0].worst_off_diagonal == doctest::Approx(0.01).epsilon(1e-12));

  const auto zero = align(kExampleA, HermitianMatrix::zero(3));
  const auto rep3 = vc_membership(zero, 0.1, 1e-8);
  CHECK_FALSE(rep3.member);
  CHECK(rep3.zero_perturbation);

  CHECK_THROWS_AS(vc_membership(align(kExampleA, kExampleF), 0.1, 1e-8), GapTooSmallError);
}

TEST_CASE("V_c membership accepts a diagonal Schur complement with separated eigenvalues") {
  // A = diag(0, 0, 5): E couples only inside the double eigenvalue, so
  // C = 0 and B = e11 = diag(0.02, -0.02).
  const auto a = HermitianMatrix::diagonal(std::vector<double>{0, 0, 5});
  const auto e = HermitianMatrix::diagonal(std::vector<double>{0.02, -0.02, 0.01});
  const auto rep = vc_membership(align(a, e), 1.0, 1e-10);
  CHECK(rep.member);
  REQUIRE(rep.blocks.size() == 1);
  CHECK(rep.blocks[0].gap_ratio == doctest::Approx(2.0));
  CHECK_FALSE(vc_membership(align(a, e), 2.5, 1e-10).member);
}

}
