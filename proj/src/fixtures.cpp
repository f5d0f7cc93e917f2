#include "arslie/fixtures.hpp"

namespace arslie {

namespace {

AlgebraVector vec(std::initializer_list<double> v) {
  AlgebraVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Matrix rows(int n, std::initializer_list<double> entries) {
  Matrix m(n, n);
  auto it = entries.begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = *it++;
  return m;
}

}  // namespace

Matrix heisenberg_derivation(double a, double b, double c, double d, double e, double f) {
  return rows(3, {a, b, 0, c, d, 0, e, f, a + d});
}

SimpleArs grushin() { return build_ars(make_chart("euclidean", 2), rows(2, {0, 0, 1, 0}), {vec({1, 0})}); }

SimpleArs aff2_affine_locus(double a, double b, double alpha, double beta) {
  return build_ars(make_chart("aff2"), rows(2, {0, 0, a, b}), {vec({alpha, beta})});
}

SimpleArs aff2_inner_y() {
  auto chart = make_chart("aff2");
  return build_ars(chart, inner_derivation(chart->algebra(), vec({0, 1})), {vec({1, 0})});
}

SimpleArs heisenberg_ideal(double e) {
  return build_ars(make_chart("heisenberg"), heisenberg_derivation(0, 0, 1, 0, e, 0), {vec({1, 0, 0}), vec({0, 0, 1})});
}

SimpleArs heisenberg_kernel_subalgebra(double a, double b, double c) {
  return build_ars(make_chart("heisenberg"), rows(3, {a, b, 0, c, -a, 0, 0, 1, 0}), {vec({1, 0, 0}), vec({0, 1, 0})});
}

SimpleArs heisenberg_degenerate(double b, double c) {
  return build_ars(make_chart("heisenberg"), rows(3, {0, b, 0, c, 0, 0, 0, 0, 0}), {vec({1, 0, 0}), vec({0, 1, 0})});
}

SimpleArs heisenberg_tangential() {
  return build_ars(make_chart("heisenberg"), rows(3, {0, 0, 0, 2, 1, 0, 0, 0, 1}), {vec({1, 0, 0}), vec({0, 1, 0})});
}

SimpleArs heisenberg_quadric(double a, double b, double c, double d, double e, double f) {
  return build_ars(make_chart("heisenberg"), heisenberg_derivation(a, b, c, d, e, f),
                   {vec({1, 0, 0}), vec({0, 1, 0})});
}

SimpleArs sl2_cartan_delta() {
  auto chart = make_chart("sl2");
  return build_ars(chart, inner_derivation(chart->algebra(), vec({0, 0, 1})), {vec({1, 0, 0}), vec({0, 1, 0})});
}

SimpleArs sl2_borel_kernel() {
  auto chart = make_chart("sl2");
  return build_ars(chart, inner_derivation(chart->algebra(), vec({0, 1, 0})), {vec({0, 1, 0}), vec({0, 0, 1})});
}

}  // namespace arslie
