#include "arslie/desing.hpp"
#include "arslie/errors.hpp"
#include "arslie/fixtures.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <tuple>

using namespace arslie;
using namespace testing;

namespace {

std::vector<SimpleArs> fixtures() {
  return {grushin(), aff2_inner_y(), aff2_affine_locus(1, 2, 1, 0), heisenberg_ideal(0.0),
          heisenberg_quadric(1, 2, 3, 1, -1, 0.5), sl2_cartan_delta()};
}

LiftedPoint lifted_point(std::mt19937& rng, const SimpleArs& a) {
  const GroupPoint g = random_point(rng, a.chart());
  LiftedPoint p(g.size() + 1);
  p << g, uniform(rng, -1, 1);
  return p;
}

}  // namespace

TEST_SUITE("desing") {
  TEST_CASE("lifted heisenberg algebra is the Engel algebra") {
    const LiftedStructure l = lift(heisenberg_ideal(0.0));
    const LieAlgebra& e = l.algebra;
    REQUIRE(e.dim() == 4);
    const AlgebraVector x = e.basis_vector(0), y = e.basis_vector(1), z = e.basis_vector(2), xt = e.basis_vector(3);
    CHECK(e.bracket(x, xt) == y);
    CHECK(e.bracket(x, y) == z);
    CHECK(e.bracket(y, xt).isZero());
    CHECK(e.bracket(z, xt).isZero());
    CHECK(solvability(e).nilpotent);
    CHECK(l.distribution == Subspace::span(4, {x, z, xt}));
  }

  TEST_CASE("lifted frame has full rank everywhere, including on the locus") {
    std::mt19937 rng(kSeed);
    for (const auto& a : fixtures()) {
      const LiftedStructure l = lift(a);
      for (int k = 0; k < 1000; ++k) {
        LiftedPoint p = lifted_point(rng, a);
        if (k % 10 == 0) {
          const auto pts = sample_locus(a, a.chart().default_box(), 5);
          if (!pts.empty()) p.head(a.chart().coord_dim()) = pts[static_cast<std::size_t>(k / 10) % pts.size()];
        }
        CHECK(rank(lifted_frame(l, p), 1e-10) == a.dim());
      }
    }
  }

  TEST_CASE("lifted frame is the left-invariant frame of the lifted product") {
    std::mt19937 rng(kSeed);
    for (const auto& a : fixtures()) {
      const LiftedStructure l = lift(a);
      const int cd = a.chart().coord_dim();
      const int n = a.dim();
      for (int k = 0; k < 10; ++k) {
        const LiftedPoint p = lifted_point(rng, a);
        const Matrix frame = lifted_frame(l, p);
        const double h = 1e-5;
        for (int j = 0; j < n; ++j) {
          LiftedPoint fwd(cd + 1), bwd(cd + 1);
          if (j < n - 1) {
            fwd << a.chart().exp_map(h * a.delta_basis()[static_cast<std::size_t>(j)]), 0.0;
            bwd << a.chart().exp_map(-h * a.delta_basis()[static_cast<std::size_t>(j)]), 0.0;
          } else {
            fwd << a.chart().identity(), h;
            bwd << a.chart().identity(), -h;
          }
          const Eigen::VectorXd fd = (lifted_multiply(l, p, fwd, 1e-4) - lifted_multiply(l, p, bwd, 1e-4)) / (2 * h);
          CHECK((frame.col(j) - fd).norm() <= 1e-7);
        }
      }
    }
  }

  TEST_CASE("lifted product is associative with identity (e, 0)") {
    std::mt19937 rng(kSeed);
    for (const auto& a : {grushin(), heisenberg_quadric(1, 2, 3, 1, -1, 0.5), sl2_cartan_delta()}) {
      const LiftedStructure l = lift(a);
      const LiftedPoint p = lifted_point(rng, a), q = lifted_point(rng, a), r = lifted_point(rng, a);
      LiftedPoint e(a.chart().coord_dim() + 1);
      e << a.chart().identity(), 0.0;
      CHECK((lifted_multiply(l, lifted_multiply(l, p, q), r) - lifted_multiply(l, p, lifted_multiply(l, q, r))).norm() <=
            1e-9);
      CHECK((lifted_multiply(l, p, e) - p).norm() <= 1e-12);
      CHECK((lifted_multiply(l, e, p) - p).norm() <= 1e-12);
    }
  }

  TEST_CASE("at s = 0 the lifted vector field projects onto the base extremal field") {
    std::mt19937 rng(kSeed);
    for (const auto& a : fixtures()) {
      const LiftedStructure l = lift(a);
      const int cd = a.chart().coord_dim();
      for (int k = 0; k < 50; ++k) {
        const GroupPoint g = random_point(rng, a.chart());
        const OneForm lam = random_vector(rng, a.dim()).transpose();
        const LiftedState st = lifted_state(l, g, uniform(rng, -1, 1), lam, 0.0);
        const LiftedDerivative ld = lifted_rhs(l, st);
        const StateDerivative bd = extremal_rhs(a, {g, lam});
        CHECK((ld.p_dot.head(cd) - bd.g_dot).norm() <= 1e-12);
        CHECK((ld.lambda_dot.head(a.dim()) - bd.lambda_dot).norm() <= 1e-12);
        CHECK(ld.p_dot(cd) == doctest::Approx(normal_controls(a, {g, lam}).v).epsilon(1e-12));
        CHECK(lifted_hamiltonian(l, st) == doctest::Approx(maximized_hamiltonian(a, {g, lam})).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("lifted integrator agrees with the base offset integrator") {
    // The quadric fixture grows fast; both routes are fourth-order, so the
    // horizon is kept short enough for their difference to stay at roundoff.
    const std::vector<std::tuple<SimpleArs, GroupPoint, double>> cases{
        {grushin(), point({0.2, -0.3}), 3.0},
        {aff2_inner_y(), point({1.2, 0.1}), 3.0},
        {heisenberg_ideal(0.0), point({0.3, -0.2, 0.1}), 3.0},
        {heisenberg_quadric(1, 2, 3, 1, -1, 0.5), point({0.1, 0.1, 0.1}), 0.5}};
    for (const auto& [a, g0, T] : cases) {
      const LiftedStructure l = lift(a);
      const int cd = a.chart().coord_dim();
      const int n = a.dim();
      OneForm lam = OneForm::Constant(n, 0.4);
      lam(0) = 0.6;
      for (double s : {0.0, 0.25, -0.5}) {
        const GeodesicTrajectory base = integrate_offset(a, {g0, lam}, s, T, {});
        const LiftedTrajectory lifted = lifted_integrate(l, lifted_state(l, g0, 0.0, lam, s), T, {});
        REQUIRE(base.samples.size() == lifted.samples.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < base.samples.size(); ++i) {
          const auto& b = base.samples[i];
          const auto& t = lifted.samples[i];
          CHECK(b.t == t.t);
          worst = std::max({worst, (b.state.g - t.state.p.head(cd)).norm(),
                            (b.state.lambda - t.state.lambda.head(n)).norm(), std::abs(b.tau - t.state.p(cd)),
                            std::abs(b.controls.v - t.v)});
        }
        CAPTURE(s);
        CHECK(worst <= 1e-10);
        CHECK(lifted.max_s_drift <= 1e-11);
      }
    }
  }

  TEST_CASE("s is reconstructed from the lifted covector") {
    const LiftedStructure l = lift(heisenberg_ideal(0.0));
    const LiftedState st = lifted_state(l, point({0.4, 0.1, -0.2}), 0.3, OneForm{{0.1, 0.2, 0.3}}, 0.75);
    CHECK(conjugate_s(l, st) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(lifted_state(l, point({0.4, 0.1, -0.2}), 0.0, OneForm{{0.1, 0.2}}, 0.0), ValidationError);
  }

  TEST_CASE("quadrature is exact for cubics on uneven grids") {
    std::mt19937 rng(kSeed);
    std::vector<double> t{0.0};
    for (int i = 0; i < 30; ++i) t.push_back(t.back() + uniform(rng, 0.01, 0.2));
    std::vector<double> f;
    for (double x : t) f.push_back(1 - 2 * x + 3 * x * x - 0.5 * x * x * x);
    const double b = t.back();
    const double exact = b - b * b + b * b * b - 0.125 * b * b * b * b;
    CHECK(sample_quadrature(t, f) == doctest::Approx(exact).epsilon(1e-13));
  }

  TEST_CASE("projection: tau is the integral of v, length never increases") {
    const SimpleArs a = heisenberg_ideal(0.0);
    const LiftedStructure l = lift(a);
    // Off the locus {x = 0}: lengths agree.
    {
      const LiftedTrajectory t = lifted_integrate(l, lifted_state(l, point({0.5, 0, 0}), 0.0, OneForm{{0.6, 0, 0.1}}, 0.2), 0.4);
      const Projection p = project(l, t);
      CHECK_FALSE(p.touches_locus);
      CHECK(p.tau_increment == doctest::Approx(p.tau_quadrature).epsilon(1e-9));
      CHECK(p.projected_length == doctest::Approx(p.lifted_length).epsilon(1e-10));
    }
    // Starting on the locus the vertical part is lost.
    {
      const LiftedTrajectory t =
          lifted_integrate(l, lifted_state(l, point({0, 0.2, -0.1}), 0.0, OneForm{{0.8, 0.5, 0.6}}, 0.3), 3.0);
      const Projection p = project(l, t);
      CHECK(p.touches_locus);
      CHECK(std::abs(p.tau_increment - p.tau_quadrature) <= 1e-8);
      CHECK(p.projected_length <= p.lifted_length + 1e-10);
      CHECK(p.samples.size() == t.samples.size());
    }
  }
}
