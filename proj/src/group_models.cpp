#include "arslie/group_models.hpp"

#include "arslie/errors.hpp"
#include "arslie/ode.hpp"

#include <algorithm>
#include <cmath>

namespace arslie {

namespace {

Matrix unit(int m, int r, int c) {
  Matrix u = Matrix::Zero(m, m);
  u(r, c) = 1.0;
  return u;
}

}  // namespace

GroupChart::GroupChart(std::string name, LieAlgebra alg, std::vector<std::string> coord_labels, Matrix base,
                       std::vector<std::pair<int, int>> positions, std::vector<Matrix> basis)
    : name_(std::move(name)),
      alg_(std::move(alg)),
      coord_labels_(std::move(coord_labels)),
      base_(std::move(base)),
      positions_(std::move(positions)),
      basis_(std::move(basis)) {
  const Eigen::Index m = base_.rows();
  Matrix stacked(m * m, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXd>(basis_[i].data(), m * m);
  decompose_ = stacked.completeOrthogonalDecomposition().pseudoInverse();
}

GroupPoint GroupChart::identity() const { return from_matrix(Matrix::Identity(base_.rows(), base_.cols())); }

bool GroupChart::is_valid(const GroupPoint& g) const { return g.size() == coord_dim() && g.allFinite(); }

void GroupChart::validate(const GroupPoint& g) const {
  if (g.size() != coord_dim())
    throw ValidationError(name_ + ": point has " + std::to_string(g.size()) + " coordinates, expected " +
                          std::to_string(coord_dim()));
  if (!is_valid(g)) throw ValidationError(name_ + ": point outside the chart domain");
}

Matrix GroupChart::to_matrix(const GroupPoint& g) const {
  Matrix m = base_;
  for (int i = 0; i < coord_dim(); ++i) m(positions_[i].first, positions_[i].second) += g(i);
  return m;
}

GroupPoint GroupChart::from_matrix(const Matrix& m) const {
  GroupPoint g(coord_dim());
  for (int i = 0; i < coord_dim(); ++i)
    g(i) = m(positions_[i].first, positions_[i].second) - base_(positions_[i].first, positions_[i].second);
  return g;
}

Matrix GroupChart::algebra_matrix(const AlgebraVector& y) const {
  Matrix m = Matrix::Zero(base_.rows(), base_.cols());
  for (int i = 0; i < dim(); ++i) m += y(i) * basis_[i];
  return m;
}

AlgebraVector GroupChart::decompose(const Matrix& a) const {
  return decompose_ * Eigen::Map<const Eigen::VectorXd>(a.data(), a.size());
}

GroupPoint GroupChart::multiply(const GroupPoint& g, const GroupPoint& h) const {
  return from_matrix(to_matrix(g) * to_matrix(h));
}

GroupPoint GroupChart::inverse(const GroupPoint& g) const { return from_matrix(to_matrix(g).inverse()); }

GroupPoint GroupChart::exp_map(const AlgebraVector& y) const { return from_matrix(matrix_exp(algebra_matrix(y))); }

Matrix GroupChart::left_jacobian(const GroupPoint& g) const {
  const Matrix m = to_matrix(g);
  Matrix l(coord_dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    const Matrix t = m * basis_[j];
    for (int i = 0; i < coord_dim(); ++i) l(i, j) = t(positions_[i].first, positions_[i].second);
  }
  return l;
}

AlgebraVector GroupChart::pull_back(const GroupPoint& g, const Eigen::VectorXd& tangent) const {
  Matrix t = Matrix::Zero(base_.rows(), base_.cols());
  for (int i = 0; i < coord_dim(); ++i) t(positions_[i].first, positions_[i].second) = tangent(i);
  return decompose(to_matrix(g).inverse() * t);
}

Matrix GroupChart::adjoint(const GroupPoint& g) const {
  const Matrix m = to_matrix(g);
  const Matrix mi = m.inverse();
  Matrix ad(dim(), dim());
  for (int j = 0; j < dim(); ++j) ad.col(j) = decompose(m * basis_[j] * mi);
  return ad;
}

std::vector<std::pair<double, double>> GroupChart::default_box() const {
  return std::vector<std::pair<double, double>>(param_dim(), {-1.0, 1.0});
}

EuclideanChart::EuclideanChart(int n)
    : GroupChart("euclidean", LieAlgebra::abelian(n),
                 [&] {
                   std::vector<std::string> l;
                   for (int i = 0; i < n; ++i) l.push_back("x" + std::to_string(i + 1));
                   return l;
                 }(),
                 Matrix::Identity(n + 1, n + 1),
                 [&] {
                   std::vector<std::pair<int, int>> p;
                   for (int i = 0; i < n; ++i) p.emplace_back(i, n);
                   return p;
                 }(),
                 [&] {
                   std::vector<Matrix> b;
                   for (int i = 0; i < n; ++i) b.push_back(unit(n + 1, i, n));
                   return b;
                 }()) {}

Aff2Chart::Aff2Chart()
    : GroupChart("aff2", LieAlgebra::aff2(), {"x", "y"}, unit(2, 1, 1), {{0, 0}, {0, 1}},
                 {unit(2, 0, 0), unit(2, 0, 1)}) {}

bool Aff2Chart::is_valid(const GroupPoint& g) const { return GroupChart::is_valid(g) && g(0) > 1e-12; }

GroupPoint Aff2Chart::exp_map(const AlgebraVector& v) const {
  const double a = v(0), b = v(1);
  GroupPoint g(2);
  g(0) = std::exp(a);
  g(1) = a == 0.0 ? b : b * std::expm1(a) / a;
  return g;
}

std::vector<std::pair<double, double>> Aff2Chart::default_box() const { return {{0.5, 1.5}, {-1.0, 1.0}}; }

HeisenbergChart::HeisenbergChart()
    : GroupChart("heisenberg", LieAlgebra::heisenberg(), {"x", "y", "z"}, Matrix::Identity(3, 3),
                 {{0, 1}, {1, 2}, {0, 2}}, {unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)}) {}

GroupPoint HeisenbergChart::exp_map(const AlgebraVector& v) const {
  GroupPoint g(3);
  g << v(0), v(1), v(2) + 0.5 * v(0) * v(1);
  return g;
}

AlgebraVector HeisenbergChart::log_map(const GroupPoint& g) const {
  AlgebraVector v(3);
  v << g(0), g(1), g(2) - 0.5 * g(0) * g(1);
  return v;
}

Sl2Chart::Sl2Chart()
    : GroupChart("sl2", LieAlgebra::sl2(), {"a", "b", "c", "d"}, Matrix::Zero(2, 2), {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                 {[] {
                    Matrix h = Matrix::Zero(2, 2);
                    h(0, 0) = 1.0;
                    h(1, 1) = -1.0;
                    return h;
                  }(),
                  unit(2, 0, 1), unit(2, 1, 0)}) {}

bool Sl2Chart::is_valid(const GroupPoint& g) const {
  if (!GroupChart::is_valid(g)) return false;
  const double scale = std::max(1.0, std::abs(g(0) * g(3)) + std::abs(g(1) * g(2)));
  return std::abs(g(0) * g(3) - g(1) * g(2) - 1.0) <= 1e-10 * scale;
}

GroupPoint Sl2Chart::normalize(const GroupPoint& g) const {
  const double det = g(0) * g(3) - g(1) * g(2);
  if (!(det > 0.0)) return g;
  return g / std::sqrt(det);
}

GroupPoint Sl2Chart::from_params(const Eigen::VectorXd& p) const {
  if (p.size() != 3) throw ValidationError("sl2: expected three parameters (a, b, c)");
  if (std::abs(p(0)) < 1e-12) throw ValidationError("sl2: parameter a must be nonzero");
  GroupPoint g(4);
  g << p(0), p(1), p(2), (1.0 + p(1) * p(2)) / p(0);
  return g;
}

std::vector<std::pair<double, double>> Sl2Chart::default_box() const {
  return {{0.5, 1.5}, {-1.0, 1.0}, {-1.0, 1.0}};
}

std::shared_ptr<const GroupChart> make_chart(const std::string& group, int dim) {
  if (group == "euclidean") {
    if (dim < 1) throw ValidationError("euclidean group needs dim >= 1");
    return std::make_shared<EuclideanChart>(dim);
  }
  if (group == "aff2") return std::make_shared<Aff2Chart>();
  if (group == "heisenberg") return std::make_shared<HeisenbergChart>();
  if (group == "sl2") return std::make_shared<Sl2Chart>();
  throw ValidationError("unknown group '" + group + "' (expected euclidean, aff2, heisenberg or sl2)");
}

LinearField::LinearField(std::shared_ptr<const GroupChart> chart, Matrix d) : chart_(std::move(chart)), d_(std::move(d)) {
  const LieAlgebra& alg = chart_->algebra();
  const DerivationReport rep = check_derivation(alg, d_);
  if (!rep.passes)
    throw ValidationError("matrix is not a derivation of " + alg.name() + " (Leibniz residual " +
                          std::to_string(rep.max_residual) + ")");
  inner_ = solve_inner(alg, d_);
  const bool has_closed_form = chart_->name() == "euclidean" || chart_->name() == "heisenberg";
  if (!inner_ && !has_closed_form)
    throw ValidationError("derivation is not inner; " + chart_->name() + " supports inner derivations only");
}

namespace {

// Heisenberg linear field in coordinates for D = (a b 0; c d 0; e f a+d).
Eigen::VectorXd heisenberg_field(const Matrix& dm, const GroupPoint& g) {
  const double a = dm(0, 0), b = dm(0, 1), c = dm(1, 0), d = dm(1, 1), e = dm(2, 0), f = dm(2, 1);
  const double x = g(0), y = g(1), z = g(2);
  Eigen::VectorXd v(3);
  v << a * x + b * y, c * x + d * y, e * x + f * y + (a + d) * z + 0.5 * c * x * x + 0.5 * b * y * y;
  return v;
}

}  // namespace

AlgebraVector f_map(const LinearField& field, const GroupPoint& g) {
  field.chart().validate(g);
  return f_map_raw(field, g);
}

AlgebraVector f_map_raw(const LinearField& field, const GroupPoint& g) {
  const GroupChart& chart = field.chart();
  if (field.inner()) {
    const AlgebraVector& x0 = *field.inner();
    return x0 - chart.adjoint(chart.inverse(g)) * x0;
  }
  if (chart.name() == "euclidean") return field.derivation() * g;
  return chart.pull_back(g, heisenberg_field(field.derivation(), g));
}

Eigen::VectorXd linear_field_at(const LinearField& field, const GroupPoint& g) {
  return field.chart().left_jacobian(g) * f_map(field, g);
}

AlgebraVector f_series(const LieAlgebra& alg, const Matrix& d, const AlgebraVector& y, double t, int k_max) {
  if (k_max < 1) throw ValidationError("f_series: k_max must be at least 1");
  const Matrix ad_y = alg.ad(y);
  AlgebraVector term = d * y;  // ad^(k-1)(Y) D Y
  AlgebraVector sum = AlgebraVector::Zero(alg.dim());
  double coeff = 1.0;  // (-1)^(k-1) t^k / k!
  for (int k = 1; k <= k_max; ++k) {
    coeff *= (k == 1 ? t : -t / k);
    sum += coeff * term;
    term = ad_y * term;
    if (term.isZero(0.0)) break;
  }
  return sum;
}

CocycleReport cocycle_check(const LinearField& field, const GroupPoint& g, const GroupPoint& g2,
                            const AlgebraVector& y, double t) {
  const GroupChart& chart = field.chart();
  const LieAlgebra& alg = chart.algebra();
  const GroupPoint e = chart.exp_map(t * y);
  CocycleReport r;
  const AlgebraVector lhs1 = f_map(field, chart.multiply(g, e));
  const AlgebraVector rhs1 = f_map(field, e) + matrix_exp(-t * alg.ad(y)) * f_map(field, g);
  r.exp_residual = (lhs1 - rhs1).norm();
  const AlgebraVector lhs2 = f_map(field, chart.multiply(g2, g));
  const AlgebraVector rhs2 = f_map(field, g) + chart.adjoint(chart.inverse(g)) * f_map(field, g2);
  r.product_residual = (lhs2 - rhs2).norm();
  r.passes = r.exp_residual <= 1e-9 && r.product_residual <= 1e-9;
  return r;
}

GroupPoint flow(const LinearField& field, const GroupPoint& g, double t, double step) {
  const GroupChart& chart = field.chart();
  chart.validate(g);
  if (t == 0.0) return g;
  if (chart.name() == "euclidean") return matrix_exp(t * field.derivation()) * g;
  if (field.inner()) {
    const AlgebraVector& x0 = *field.inner();
    return chart.multiply(chart.multiply(chart.exp_map(-t * x0), g), chart.exp_map(t * x0));
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / step - 1e-9)));
  const double h = t / steps;
  const Rhs rhs = [&](double, const State& p) { return linear_field_at(field, p); };
  State p = g;
  for (int i = 0; i < steps; ++i) {
    p = chart.normalize(rk4_step(rhs, i * h, p, h));
    if (!chart.is_valid(p)) throw NumericFailure(chart.name() + ": flow left the chart domain", (i + 1) * h);
  }
  return p;
}

}  // namespace arslie
