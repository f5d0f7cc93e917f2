#include "arslie/errors.hpp"
#include "arslie/fixtures.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace arslie;
using namespace testing;

namespace {

std::vector<SimpleArs> sampled_fixtures() {
  return {grushin(), aff2_affine_locus(1, 2, 1, 0), heisenberg_ideal(0.5), heisenberg_kernel_subalgebra(1, 1, 1),
          heisenberg_degenerate(1, 1), heisenberg_tangential(), sl2_cartan_delta(), sl2_borel_kernel()};
}

// psi must equal scale * poly for a single constant scale.
void check_proportional(const SimpleArs& ars, const std::function<double(const GroupPoint&)>& poly,
                        const GroupPoint& probe, const std::vector<GroupPoint>& pts) {
  const double scale = psi(ars, probe) / poly(probe);
  REQUIRE(std::abs(scale) > 1e-6);
  for (const auto& g : pts) CHECK(std::abs(psi(ars, g) - scale * poly(g)) <= 1e-12 * (1 + std::abs(poly(g))));
}

}  // namespace

TEST_SUITE("ars") {
  TEST_CASE("invalid structures are rejected") {
    auto e2 = make_chart("euclidean", 2);
    // Rank condition fails when the field vanishes.
    CHECK_THROWS_AS(build_ars(e2, Matrix::Zero(2, 2), {point({1, 0})}), ValidationError);
    auto h = make_chart("heisenberg");
    CHECK_THROWS_AS(build_ars(h, heisenberg_derivation(1, 0, 0, 0, 0, 1), {point({1, 0, 0}), point({2, 0, 0})}),
                    ValidationError);
    CHECK_THROWS_AS(build_ars(h, heisenberg_derivation(1, 0, 0, 0, 0, 1), {point({1, 0, 0})}), ValidationError);
    CHECK_THROWS_AS(build_ars(h, Matrix::Identity(3, 3), {point({1, 0, 0}), point({0, 1, 0})}), ValidationError);
  }

  TEST_CASE("omega annihilates Delta and is normalized on the complement") {
    for (const auto& a : sampled_fixtures()) {
      for (const auto& y : a.delta_basis()) CHECK(std::abs(a.omega() * y) <= 1e-15);
      CHECK(std::abs(a.omega() * a.y_n() - 1.0) <= 1e-15);
      CHECK_FALSE(a.delta().contains(a.y_n()));
    }
  }

  TEST_CASE("psi matches the polynomial locus equations") {
    std::mt19937 rng(kSeed);
    std::vector<GroupPoint> plane, line;
    for (int k = 0; k < 100; ++k) {
      plane.push_back(random_vector(rng, 3, 2.0));
      line.push_back(random_vector(rng, 2, 2.0));
    }
    check_proportional(grushin(), [](const GroupPoint& g) { return g(0); }, point({1, 0}), line);
    check_proportional(
        heisenberg_tangential(), [](const GroupPoint& g) { return g(2) - g(0) * g(0) - g(0) * g(1); },
        point({0, 0, 1}), plane);
    const double a = 1, b = 2, c = 3, d = 1, e = -1, f = 0.5;
    check_proportional(
        heisenberg_quadric(a, b, c, d, e, f),
        [=](const GroupPoint& g) {
          const double x = g(0), y = g(1), z = g(2);
          return e * x + f * y + (a + d) * z + 0.5 * c * x * x + 0.5 * b * y * y - x * (c * x + d * y);
        },
        point({0, 0, 1}), plane);
  }

  TEST_CASE("psi scales with omega; the locus does not") {
    std::mt19937 rng(kSeed);
    const SimpleArs a = heisenberg_quadric(1, 2, 3, 1, -1, 0.5);
    const SimpleArs b = a.scaled_omega(-3.0);
    for (int k = 0; k < 50; ++k) {
      const GroupPoint g = random_point(rng, a.chart());
      CHECK(std::abs(psi(b, g) + 3.0 * psi(a, g)) <= 1e-12);
    }
    const LocusReport ra = classify_locus(a), rb = classify_locus(b);
    for (const auto& id : kVerdictIds) CHECK(ra.verdict(id).applies == rb.verdict(id).applies);
    CHECK(ra.hz_on_kernel == rb.hz_on_kernel);
  }

  TEST_CASE("grad psi matches finite differences along left translations") {
    std::mt19937 rng(kSeed);
    for (const auto& a : sampled_fixtures()) {
      const GroupChart& c = a.chart();
      for (int k = 0; k < 20; ++k) {
        const GroupPoint g = random_point(rng, c);
        const AlgebraVector y = random_vector(rng, c.dim());
        const double h = 1e-5;
        const double fd = (psi(a, c.multiply(g, c.exp_map(h * y))) - psi(a, c.multiply(g, c.exp_map(-h * y)))) / (2 * h);
        CHECK(std::abs(grad_psi(a, g) * y - fd) <= 1e-8);
      }
    }
  }

  TEST_CASE("sampled locus points are zeros of psi, parallel equals serial") {
    for (const auto& a : sampled_fixtures()) {
      const Box box = a.chart().default_box();
      const int res = default_resolution(a.chart().param_dim());
      const auto par = sample_locus(a, box, res);
      const auto ser = sample_locus_serial(a, box, res);
      REQUIRE(par.size() == ser.size());
      CHECK_FALSE(par.empty());
      for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i] == ser[i]);
        CHECK(in_locus(a, par[i]));
      }
      CHECK(std::is_sorted(par.begin(), par.end(), [](const GroupPoint& p, const GroupPoint& q) {
        return std::lexicographical_compare(p.begin(), p.end(), q.begin(), q.end());
      }));
    }
  }

  TEST_CASE("abnormal subalgebras") {
    const SimpleArs h = heisenberg_ideal(0.0);
    CHECK(abnormal_algebra(h) == Subspace::span(3, {AlgebraVector::Unit(3, 2)}));
    CHECK(abnormal_algebra(aff2_inner_y()).is_zero());
    CHECK(abnormal_algebra(grushin()).is_zero());
  }

  TEST_CASE("classification report wording") {
    const LocusReport r = classify_locus(heisenberg_tangential());
    CHECK(r.verdicts.size() == kVerdictIds.size());
    for (std::size_t i = 0; i < kVerdictIds.size(); ++i) CHECK(r.verdicts[i].id == kVerdictIds[i]);
    CHECK(r.not_codim_one_subgroup);
    CHECK_THROWS_AS(r.verdict("nonexistent"), InvariantViolation);
    CHECK(to_string(ZxConsistency::unsampled) == "unsampled");
  }
}
