#include "arslie/errors.hpp"
#include "arslie/fixtures.hpp"
#include "arslie/group_models.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace arslie;
using namespace testing;

namespace {

std::vector<std::shared_ptr<const GroupChart>> charts() {
  return {make_chart("euclidean", 3), make_chart("aff2"), make_chart("heisenberg"), make_chart("sl2")};
}

// One derivation per chart, inner or not, used for linear-field checks.
std::vector<LinearField> fields() {
  std::vector<LinearField> f;
  Matrix e(3, 3);
  e << 0.3, -1, 0.2, 0.5, 0, 1, -0.4, 0.7, -0.2;
  f.emplace_back(make_chart("euclidean", 3), e);
  auto aff = make_chart("aff2");
  f.emplace_back(aff, inner_derivation(aff->algebra(), point({0.6, -0.9})));
  f.emplace_back(make_chart("heisenberg"), heisenberg_derivation(0.5, -1, 2, 0.3, 0.7, -0.4));
  auto sl = make_chart("sl2");
  f.emplace_back(sl, inner_derivation(sl->algebra(), point({0.4, -0.7, 0.9})));
  return f;
}

}  // namespace

TEST_SUITE("group_models") {
  TEST_CASE("chart multiplication and inverse follow matrix products") {
    std::mt19937 rng(kSeed);
    for (const auto& c : charts()) {
      CHECK(c->is_valid(c->identity()));
      for (int k = 0; k < 100; ++k) {
        const GroupPoint g = random_point(rng, *c), h = random_point(rng, *c);
        const Matrix prod = c->to_matrix(g) * c->to_matrix(h);
        CHECK((c->to_matrix(c->multiply(g, h)) - prod).norm() <= 1e-12 * (1 + prod.norm()));
        CHECK((c->multiply(g, c->inverse(g)) - c->identity()).norm() <= 1e-12);
        CHECK(c->is_valid(g));
      }
    }
  }

  TEST_CASE("closed-form exponentials agree with Eigen's matrix exponential") {
    std::mt19937 rng(kSeed);
    for (const auto& c : charts())
      for (int k = 0; k < 100; ++k) {
        const AlgebraVector y = random_vector(rng, c->dim(), 1.2);
        const Matrix m = c->algebra_matrix(y).exp();
        CHECK((c->to_matrix(c->exp_map(y)) - m).norm() <= 1e-12 * (1 + m.norm()));
      }
  }

  TEST_CASE("heisenberg log inverts exp") {
    HeisenbergChart h;
    std::mt19937 rng(kSeed);
    for (int k = 0; k < 100; ++k) {
      const AlgebraVector y = random_vector(rng, 3, 2.0);
      CHECK((h.log_map(h.exp_map(y)) - y).norm() <= 1e-14);
    }
  }

  TEST_CASE("left jacobian and adjoint match matrix calculus") {
    std::mt19937 rng(kSeed);
    for (const auto& c : charts())
      for (int k = 0; k < 30; ++k) {
        const GroupPoint g = random_point(rng, *c);
        const AlgebraVector y = random_vector(rng, c->dim());
        // L(g) y is the chart tangent of g * Y.
        const Matrix gy = c->to_matrix(g) * c->algebra_matrix(y);
        const Eigen::VectorXd tangent = c->left_jacobian(g) * y;
        const double h = 1e-6;
        const Eigen::VectorXd fd = (c->from_matrix(c->to_matrix(g) + h * gy) - c->from_matrix(c->to_matrix(g) - h * gy)) / (2 * h);
        CHECK((tangent - fd).norm() <= 1e-8);
        CHECK((c->pull_back(g, tangent) - y).norm() <= 1e-11);
        const Matrix conj = c->to_matrix(g) * c->algebra_matrix(y) * c->to_matrix(g).inverse();
        CHECK((c->adjoint(g) * y - coordinates(*c, conj)).norm() <= 1e-11);
      }
  }

  TEST_CASE("chart domain checks") {
    Aff2Chart a;
    CHECK_THROWS_AS(a.validate(point({-1.0, 0.0})), ValidationError);
    CHECK_THROWS_AS(a.validate(point({1.0})), ValidationError);
    Sl2Chart s;
    CHECK_THROWS_AS(s.validate(point({1, 1, 1, 1})), ValidationError);
    CHECK(s.is_valid(s.from_params(point({2.0, 0.5, -1.0}))));
    CHECK_THROWS_AS(s.from_params(point({0.0, 1.0, 1.0})), ValidationError);
    CHECK_THROWS_AS(make_chart("so3"), ValidationError);
  }

  TEST_CASE("non-derivations are rejected; aff2 derivations are all inner") {
    CHECK_THROWS_AS(LinearField(make_chart("heisenberg"), Matrix::Identity(3, 3)), ValidationError);
    Matrix d(2, 2);
    d << 0, 0, 0, 1;  // D Y = Y, which is ad(X)
    const LinearField f(make_chart("aff2"), d);
    REQUIRE(f.inner().has_value());
    CHECK((*f.inner() - point({-1, 0})).norm() <= 1e-14);
    Matrix bad(2, 2);
    bad << 1, 0, 0, 0;
    CHECK_THROWS_AS(LinearField(make_chart("aff2"), bad), ValidationError);
  }

  TEST_CASE("F agrees with the automorphism-flow oracle") {
    std::mt19937 rng(kSeed);
    for (const auto& f : fields())
      for (int k = 0; k < 40; ++k) {
        const AlgebraVector y = random_vector(rng, f.chart().dim(), 0.8);
        const AlgebraVector expected = oracle_f(f.chart(), f.derivation(), y);
        CHECK((f_map(f, f.chart().exp_map(y)) - expected).norm() <= 1e-8);
      }
  }

  TEST_CASE("F vanishes at the identity and the field is L(g) F") {
    std::mt19937 rng(kSeed);
    for (const auto& f : fields()) {
      CHECK(f_map(f, f.chart().identity()).norm() <= 1e-15);
      const GroupPoint g = random_point(rng, f.chart());
      CHECK((linear_field_at(f, g) - f.chart().left_jacobian(g) * f_map(f, g)).norm() <= 1e-14);
    }
  }

  TEST_CASE("cocycle identities on random points") {
    std::mt19937 rng(kSeed);
    for (const auto& f : fields())
      for (int k = 0; k < 50; ++k) {
        const GroupPoint g = random_point(rng, f.chart()), g2 = random_point(rng, f.chart());
        const CocycleReport r = cocycle_check(f, g, g2, random_vector(rng, f.chart().dim()), uniform(rng, -1, 1));
        CHECK(r.passes);
      }
  }

  TEST_CASE("truncated F series converges to F(exp tY)") {
    std::mt19937 rng(kSeed);
    for (const auto& f : fields())
      for (int k = 0; k < 20; ++k) {
        const AlgebraVector y = random_vector(rng, f.chart().dim(), 0.6);
        const double t = uniform(rng, -1, 1);
        const AlgebraVector series = f_series(f.chart().algebra(), f.derivation(), y, t, 40);
        CHECK((series - f_map(f, f.chart().exp_map(t * y))).norm() <= 1e-12);
      }
    CHECK_THROWS_AS(f_series(LieAlgebra::heisenberg(), Matrix::Identity(3, 3), AlgebraVector::Ones(3), 1.0, 0),
                    ValidationError);
  }

  TEST_CASE("flows are automorphisms and compose") {
    std::mt19937 rng(kSeed);
    for (const auto& f : fields()) {
      const GroupChart& c = f.chart();
      const GroupPoint g = random_point(rng, c, 0.5), h = random_point(rng, c, 0.5);
      const double t = 0.7;
      const GroupPoint lhs = flow(f, c.multiply(g, h), t, 1e-3);
      const GroupPoint rhs = c.multiply(flow(f, g, t, 1e-3), flow(f, h, t, 1e-3));
      CHECK((lhs - rhs).norm() <= 1e-10);
      CHECK((flow(f, flow(f, g, 0.3), 0.4) - flow(f, g, 0.7)).norm() <= 1e-10);
      CHECK((flow(f, c.identity(), t) - c.identity()).norm() <= 1e-14);
    }
  }
}
