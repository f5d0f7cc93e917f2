#pragma once

#include "arslie/ars.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

namespace testing {

using namespace arslie;

inline constexpr unsigned kSeed = 7;

inline double uniform(std::mt19937& r, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(r); }

inline Eigen::VectorXd random_vector(std::mt19937& r, int n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(r, -scale, scale);
  return v;
}

inline Matrix random_matrix(std::mt19937& r, int n, double scale = 1.0) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform(r, -scale, scale);
  return m;
}

inline GroupPoint random_point(std::mt19937& r, const GroupChart& chart, double scale = 0.8) {
  return chart.exp_map(random_vector(r, chart.dim(), scale));
}

inline GroupPoint point(std::initializer_list<double> v) {
  GroupPoint g(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) g(i++) = x;
  return g;
}

// Coordinates of an algebra matrix in the chart's basis, by least squares on
// the flattened basis matrices.
inline AlgebraVector coordinates(const GroupChart& chart, const Matrix& m) {
  const int n = chart.dim();
  const Eigen::Index sz = m.size();
  Matrix a(sz, n);
  for (int i = 0; i < n; ++i) {
    const Matrix e = chart.algebra_matrix(AlgebraVector::Unit(n, i));
    a.col(i) = Eigen::Map<const Eigen::VectorXd>(e.data(), sz);
  }
  return a.colPivHouseholderQr().solve(Eigen::Map<const Eigen::VectorXd>(m.data(), sz));
}

// F(exp Y) from the automorphism property of the flow:
// phi_t(exp Y) = exp(e^{tD} Y), so X_{exp Y} = d/dt exp(Y + t D Y) at t = 0.
// Matrix exponentials come from Eigen's MatrixFunctions module.
inline AlgebraVector oracle_f(const GroupChart& chart, const Matrix& d, const AlgebraVector& y) {
  const double h = 1e-5;
  auto expm = [&](const AlgebraVector& v) -> Matrix { return chart.algebra_matrix(v).exp(); };
  const Matrix dg = (expm(y + h * d * y) - expm(y - h * d * y)) / (2 * h);
  return coordinates(chart, expm(y).inverse() * dg);
}

}  // namespace testing
