#pragma once

#include "arslie/lie_core.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arslie {

/// Chart coordinates of a group element.
using GroupPoint = Eigen::VectorXd;

/// A matrix group realized in coordinates that are affine in the matrix
/// entries. The Lie algebra basis is given by matrices E_i whose commutators
/// reproduce the structure constants of algebra().
class GroupChart {
 public:
  virtual ~GroupChart() = default;

  const std::string& name() const { return name_; }
  const LieAlgebra& algebra() const { return alg_; }
  int dim() const { return alg_.dim(); }
  int coord_dim() const { return static_cast<int>(positions_.size()); }
  const std::vector<std::string>& coord_labels() const { return coord_labels_; }

  GroupPoint identity() const;
  /// Throws ValidationError when g is outside the chart domain.
  void validate(const GroupPoint& g) const;
  virtual bool is_valid(const GroupPoint& g) const;
  /// Projects a point back onto the group after a numerical step (identity for
  /// charts without constraints).
  virtual GroupPoint normalize(const GroupPoint& g) const { return g; }

  GroupPoint multiply(const GroupPoint& g, const GroupPoint& h) const;
  GroupPoint inverse(const GroupPoint& g) const;
  virtual GroupPoint exp_map(const AlgebraVector& y) const;

  /// coord_dim x dim matrix: column j is the chart tangent of the left
  /// invariant field e_j at g.
  Matrix left_jacobian(const GroupPoint& g) const;
  /// Left-trivialization TL_{g^-1} of a chart tangent vector at g.
  AlgebraVector pull_back(const GroupPoint& g, const Eigen::VectorXd& tangent) const;
  Matrix adjoint(const GroupPoint& g) const;

  Matrix to_matrix(const GroupPoint& g) const;
  GroupPoint from_matrix(const Matrix& m) const;
  /// Element of the algebra as a matrix, sum_i y_i E_i.
  Matrix algebra_matrix(const AlgebraVector& y) const;
  AlgebraVector decompose(const Matrix& algebra_element) const;

  /// Sampling parametrization: param_dim() free parameters mapped to a point.
  virtual int param_dim() const { return coord_dim(); }
  virtual GroupPoint from_params(const Eigen::VectorXd& params) const { return params; }
  /// Default sampling box, one (lo, hi) pair per parameter.
  virtual std::vector<std::pair<double, double>> default_box() const;

 protected:
  GroupChart(std::string name, LieAlgebra alg, std::vector<std::string> coord_labels, Matrix base,
             std::vector<std::pair<int, int>> positions, std::vector<Matrix> basis);

 private:
  std::string name_;
  LieAlgebra alg_;
  std::vector<std::string> coord_labels_;
  Matrix base_;
  std::vector<std::pair<int, int>> positions_;
  std::vector<Matrix> basis_;
  Matrix decompose_;  // pseudo-inverse of the stacked basis matrices
};

/// R^n with translations; coordinates x_1..x_n.
class EuclideanChart : public GroupChart {
 public:
  explicit EuclideanChart(int n);
  GroupPoint exp_map(const AlgebraVector& y) const override { return y; }
};

/// Orientation-preserving affine maps of the line, coordinates (x, y) of the
/// matrix ((x, y), (0, 1)), x > 0.
class Aff2Chart : public GroupChart {
 public:
  Aff2Chart();
  bool is_valid(const GroupPoint& g) const override;
  GroupPoint exp_map(const AlgebraVector& y) const override;
  std::vector<std::pair<double, double>> default_box() const override;
};

/// Heisenberg group, coordinates (x, y, z) of ((1, x, z), (0, 1, y), (0, 0, 1)).
class HeisenbergChart : public GroupChart {
 public:
  HeisenbergChart();
  GroupPoint exp_map(const AlgebraVector& y) const override;
  /// Inverse of exp_map.
  AlgebraVector log_map(const GroupPoint& g) const;
};

/// SL(2, R) in the four matrix entries (a, b, c, d).
class Sl2Chart : public GroupChart {
 public:
  Sl2Chart();
  bool is_valid(const GroupPoint& g) const override;
  GroupPoint normalize(const GroupPoint& g) const override;
  int param_dim() const override { return 3; }
  /// (a, b, c) with d = (1 + b c) / a.
  GroupPoint from_params(const Eigen::VectorXd& params) const override;
  std::vector<std::pair<double, double>> default_box() const override;
};

std::shared_ptr<const GroupChart> make_chart(const std::string& group, int dim = 0);

/// A linear vector field on a chart, determined by its derivation D.
class LinearField {
 public:
  /// Throws ValidationError if d is not a derivation, or if the chart has no
  /// closed-form evaluation for non-inner derivations (Aff2, SL2).
  LinearField(std::shared_ptr<const GroupChart> chart, Matrix d);

  const GroupChart& chart() const { return *chart_; }
  std::shared_ptr<const GroupChart> chart_ptr() const { return chart_; }
  const Matrix& derivation() const { return d_; }
  /// X0 with D = -ad(X0), when D is inner.
  const std::optional<AlgebraVector>& inner() const { return inner_; }

 private:
  std::shared_ptr<const GroupChart> chart_;
  Matrix d_;
  std::optional<AlgebraVector> inner_;
};

/// F(g) = TL_{g^-1} X_g.
AlgebraVector f_map(const LinearField& field, const GroupPoint& g);
/// f_map without the chart-domain check, for intermediate integrator stages
/// that sit slightly off a constrained chart.
AlgebraVector f_map_raw(const LinearField& field, const GroupPoint& g);
/// The field in chart coordinates, L(g) F(g).
Eigen::VectorXd linear_field_at(const LinearField& field, const GroupPoint& g);
/// Partial sum of F(exp tY) = sum_k (-1)^(k-1) t^k / k! ad^(k-1)(Y) D Y.
AlgebraVector f_series(const LieAlgebra& alg, const Matrix& d, const AlgebraVector& y, double t, int k_max);

struct CocycleReport {
  double exp_residual = 0.0;      // F(g exp tY) - F(exp tY) - e^{-t ad Y} F(g)
  double product_residual = 0.0;  // F(g' g) - F(g) - Ad(g^-1) F(g')
  bool passes = false;
};
CocycleReport cocycle_check(const LinearField& field, const GroupPoint& g, const GroupPoint& g2,
                            const AlgebraVector& y, double t);

/// Flow of the linear field. Closed form on R^n and for inner derivations;
/// otherwise fixed-step RK4 of g' = X(g) with the given step.
GroupPoint flow(const LinearField& field, const GroupPoint& g, double t, double step = 1e-3);

}  // namespace arslie
