#include "arslie/errors.hpp"
#include "arslie/lie_core.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace arslie;
using namespace testing;

namespace {

std::vector<LieAlgebra> algebras() {
  return {LieAlgebra::abelian(3), LieAlgebra::aff2(), LieAlgebra::heisenberg(), LieAlgebra::sl2()};
}

Matrix taylor_exp(const Matrix& a) {
  Matrix sum = Matrix::Identity(a.rows(), a.cols());
  Matrix term = sum;
  for (int k = 1; k < 80; ++k) {
    term = term * a / k;
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_SUITE("lie_core") {
  TEST_CASE("builtin algebras are antisymmetric and satisfy Jacobi") {
    for (const auto& alg : algebras()) {
      CHECK(alg.antisymmetry_residual() == 0.0);
      CHECK(alg.jacobi_residual() <= 1e-15);
    }
  }

  TEST_CASE("brackets are bilinear, antisymmetric and satisfy Jacobi on random vectors") {
    std::mt19937 rng(kSeed);
    for (const auto& alg : algebras()) {
      const int n = alg.dim();
      for (int k = 0; k < 200; ++k) {
        const AlgebraVector x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);
        const double a = uniform(rng, -2, 2);
        CHECK((alg.bracket(x, y) + alg.bracket(y, x)).norm() <= 1e-14);
        CHECK((alg.bracket(a * x + z, y) - a * alg.bracket(x, y) - alg.bracket(z, y)).norm() <= 1e-13);
        const AlgebraVector jac =
            alg.bracket(alg.bracket(x, y), z) + alg.bracket(alg.bracket(y, z), x) + alg.bracket(alg.bracket(z, x), y);
        CHECK(jac.norm() <= 1e-13);
      }
    }
  }

  TEST_CASE("sl2 commutation relations") {
    const LieAlgebra s = LieAlgebra::sl2();
    const AlgebraVector h = s.basis_vector(0), x = s.basis_vector(1), y = s.basis_vector(2);
    CHECK(s.bracket(h, x) == 2.0 * x);
    CHECK(s.bracket(h, y) == -2.0 * y);
    CHECK(s.bracket(x, y) == h);
  }

  TEST_CASE("malformed structure constants are rejected") {
    std::vector<double> c(8, 0.0);
    c[(0 * 2 + 1) * 2 + 1] = 1.0;  // [e1, e2] = e2 without [e2, e1] = -e2
    CHECK_THROWS_AS(LieAlgebra("bad", {"a", "b"}, c), ValidationError);
    CHECK_THROWS_AS(LieAlgebra("bad", {"a", "b"}, std::vector<double>(5, 0.0)), ValidationError);
  }

  TEST_CASE("inner derivations pass the Leibniz check and are recovered by solve_inner") {
    std::mt19937 rng(kSeed);
    for (const auto& alg : {LieAlgebra::aff2(), LieAlgebra::heisenberg(), LieAlgebra::sl2()}) {
      const AlgebraVector x = random_vector(rng, alg.dim());
      const Matrix d = inner_derivation(alg, x);
      CHECK(check_derivation(alg, d).passes);
      const auto back = solve_inner(alg, d);
      REQUIRE(back.has_value());
      // x is determined up to the centre.
      CHECK((inner_derivation(alg, *back) - d).norm() <= 1e-13);
    }
  }

  TEST_CASE("heisenberg derivations: the (a+d) corner is forced") {
    const LieAlgebra h = LieAlgebra::heisenberg();
    Matrix d(3, 3);
    d << 1, 2, 0, 3, 4, 0, 5, 6, 5;
    CHECK(check_derivation(h, d).passes);
    CHECK_FALSE(solve_inner(h, d).has_value());
    d(2, 2) = 4.0;
    CHECK_FALSE(check_derivation(h, d).passes);
    CHECK_THROWS_AS(check_derivation(h, Matrix::Zero(2, 2)), ValidationError);
  }

  TEST_CASE("subspace basis is canonical") {
    std::mt19937 rng(kSeed);
    for (int k = 0; k < 100; ++k) {
      const int n = 4;
      const int m = 1 + k % 3;
      Matrix gens = Matrix::Zero(n, m);
      for (int j = 0; j < m; ++j) gens.col(j) = random_vector(rng, n);
      Matrix mixed = gens * random_matrix(rng, m);
      const Subspace a = Subspace::span(gens);
      const Subspace b = Subspace::span(mixed);
      CHECK(a.dim() == m);
      CHECK(a == b);
      CHECK((a.basis() - b.basis()).norm() <= 1e-9);
      CHECK((a.annihilator() * a.basis()).norm() <= 1e-12);
      CHECK(a.annihilator().rows() == n - m);
    }
  }

  TEST_CASE("subspace sum and intersection dimensions") {
    const AlgebraVector e1 = AlgebraVector::Unit(3, 0), e2 = AlgebraVector::Unit(3, 1), e3 = AlgebraVector::Unit(3, 2);
    const Subspace a = Subspace::span(3, {e1, e2});
    const Subspace b = Subspace::span(3, {e2, e3});
    CHECK((a + b).is_full());
    CHECK(a.intersect(b) == Subspace::span(3, {e2}));
    CHECK(Subspace::span(3, {e1, 2.0 * e1}).dim() == 1);
    CHECK(a.describe({"X", "Y", "Z"}) == "span{X, Y}");
  }

  TEST_CASE("rank and null space") {
    Matrix m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    CHECK(rank(m) == 2);
    const Matrix k = null_space(m);
    REQUIRE(k.cols() == 1);
    CHECK((m * k).norm() <= 1e-13);
  }

  TEST_CASE("matrix_exp agrees with the Taylor series and Eigen") {
    std::mt19937 rng(kSeed);
    for (int k = 0; k < 50; ++k) {
      const Matrix a = random_matrix(rng, 3, 1.5);
      const Matrix e = matrix_exp(a);
      CHECK((e - taylor_exp(a)).norm() <= 1e-12 * e.norm());
      CHECK((e - Matrix(a.exp())).norm() <= 1e-12 * e.norm());
    }
  }

  TEST_CASE("classification of subspaces") {
    const LieAlgebra h = LieAlgebra::heisenberg();
    const AlgebraVector x = h.basis_vector(0), y = h.basis_vector(1), z = h.basis_vector(2);
    CHECK(subspace_classify(h, Subspace::span(3, {x, z})).is_ideal);
    const auto xy = subspace_classify(h, Subspace::span(3, {x, y}));
    CHECK_FALSE(xy.is_subalgebra);
    CHECK(derived_subalgebra(h) == Subspace::span(3, {z}));
    CHECK(generated_subalgebra(h, Subspace::span(3, {x, y})).is_full());
    CHECK(normalizer(h, Subspace::span(3, {x})) == Subspace::span(3, {x, z}));

    const LieAlgebra s = LieAlgebra::sl2();
    const Subspace borel = Subspace::span(3, {s.basis_vector(0), s.basis_vector(1)});
    const auto b = subspace_classify(s, borel);
    CHECK(b.is_subalgebra);
    CHECK_FALSE(b.is_ideal);
    CHECK(normalizer(s, borel) == borel);
  }

  TEST_CASE("solvability") {
    CHECK(solvability(LieAlgebra::heisenberg()).nilpotent);
    const auto a = solvability(LieAlgebra::aff2());
    CHECK(a.solvable);
    CHECK_FALSE(a.nilpotent);
    CHECK_FALSE(solvability(LieAlgebra::sl2()).solvable);
    CHECK(solvability(LieAlgebra::abelian(4)).nilpotent);
  }

  TEST_CASE("invariant hull and core are extremal") {
    const LieAlgebra s = LieAlgebra::sl2();
    const Subspace h = Subspace::span(3, {s.basis_vector(0)});
    const Subspace seed = Subspace::span(3, {s.basis_vector(1) + s.basis_vector(2)});
    const Subspace hull = invariant_hull(s, h, seed);
    CHECK(hull == Subspace::span(3, {s.basis_vector(1), s.basis_vector(2)}));
    CHECK(invariant_core(s, h, seed).is_zero());
    CHECK(invariant_core(s, h, hull) == hull);
  }

  TEST_CASE("condition (HZ) rejects non-subalgebras") {
    const LieAlgebra h = LieAlgebra::heisenberg();
    const Subspace xy = Subspace::span(3, {h.basis_vector(0), h.basis_vector(1)});
    CHECK_THROWS_AS(condition_hz(h, xy, Matrix::Identity(3, 3), OneForm::Unit(3, 2)), ValidationError);
  }
}
