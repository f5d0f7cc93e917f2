#include "arslie/lie_core.hpp"

#include "arslie/errors.hpp"

#include <cmath>

namespace arslie {

namespace {

void check_dim(const LieAlgebra& alg, const AlgebraVector& v, const char* what) {
  if (v.size() != alg.dim())
    throw ValidationError(std::string(what) + ": vector of length " + std::to_string(v.size()) +
                          " in algebra of dimension " + std::to_string(alg.dim()));
}

double tol_for(double magnitude) { return kExactTol * std::max(1.0, magnitude); }

}  // namespace

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, const std::vector<double>& structure)
    : name_(std::move(name)), n_(static_cast<int>(labels.size())), labels_(std::move(labels)) {
  if (n_ <= 0) throw ValidationError("Lie algebra must have positive dimension");
  if (structure.size() != static_cast<std::size_t>(n_) * n_ * n_)
    throw ValidationError("structure constant array has wrong size");
  ad_basis_.assign(n_, Matrix::Zero(n_, n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) ad_basis_[i](k, j) = structure[(i * n_ + j) * n_ + k];
  double scale = 0.0;
  for (double c : structure) scale = std::max(scale, std::abs(c));
  if (antisymmetry_residual() > tol_for(scale))
    throw ValidationError("structure constants are not antisymmetric");
  if (jacobi_residual() > tol_for(scale * scale))
    throw ValidationError("structure constants violate the Jacobi identity");
}

LieAlgebra LieAlgebra::abelian(int n) {
  return LieAlgebra("abelian", [&] {
    std::vector<std::string> l;
    for (int i = 0; i < n; ++i) l.push_back("e" + std::to_string(i + 1));
    return l;
  }(), std::vector<double>(static_cast<std::size_t>(n) * n * n, 0.0));
}

LieAlgebra LieAlgebra::aff2() {
  std::vector<double> c(8, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[(i * 2 + j) * 2 + k]; };
  at(0, 1, 1) = 1.0;
  at(1, 0, 1) = -1.0;
  return LieAlgebra("aff2", {"X", "Y"}, c);
}

LieAlgebra LieAlgebra::heisenberg() {
  std::vector<double> c(27, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[(i * 3 + j) * 3 + k]; };
  at(0, 1, 2) = 1.0;
  at(1, 0, 2) = -1.0;
  return LieAlgebra("heisenberg", {"X", "Y", "Z"}, c);
}

LieAlgebra LieAlgebra::sl2() {
  std::vector<double> c(27, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[(i * 3 + j) * 3 + k]; };
  at(0, 1, 1) = 2.0;
  at(1, 0, 1) = -2.0;
  at(0, 2, 2) = -2.0;
  at(2, 0, 2) = 2.0;
  at(1, 2, 0) = 1.0;
  at(2, 1, 0) = -1.0;
  return LieAlgebra("sl2", {"H", "X", "Y"}, c);
}

AlgebraVector LieAlgebra::basis_vector(int i) const { return AlgebraVector::Unit(n_, i); }

Matrix LieAlgebra::ad(const AlgebraVector& x) const {
  check_dim(*this, x, "ad");
  Matrix m = Matrix::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    if (x(i) != 0.0) m += x(i) * ad_basis_[i];
  return m;
}

AlgebraVector LieAlgebra::bracket(const AlgebraVector& x, const AlgebraVector& y) const {
  check_dim(*this, y, "bracket");
  return ad(x) * y;
}

double LieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      r = std::max(r, (ad_basis_[i].col(j) + ad_basis_[j].col(i)).cwiseAbs().maxCoeff());
  return r;
}

double LieAlgebra::jacobi_residual() const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const AlgebraVector ei = basis_vector(i), ej = basis_vector(j), ek = basis_vector(k);
        const AlgebraVector s =
            bracket(bracket(ei, ej), ek) + bracket(bracket(ej, ek), ei) + bracket(bracket(ek, ei), ej);
        r = std::max(r, s.cwiseAbs().maxCoeff());
      }
  return r;
}

AlgebraVector bracket(const LieAlgebra& alg, const AlgebraVector& x, const AlgebraVector& y) {
  return alg.bracket(x, y);
}

DerivationReport check_derivation(const LieAlgebra& alg, const Matrix& d) {
  const int n = alg.dim();
  if (d.rows() != n || d.cols() != n)
    throw ValidationError("derivation matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  DerivationReport rep;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const AlgebraVector ei = alg.basis_vector(i), ej = alg.basis_vector(j);
      const AlgebraVector r = d * alg.bracket(ei, ej) - alg.bracket(d * ei, ej) - alg.bracket(ei, d * ej);
      rep.max_residual = std::max(rep.max_residual, r.cwiseAbs().maxCoeff());
    }
  double scale = d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
  rep.passes = rep.max_residual <= tol_for(scale);
  return rep;
}

Matrix inner_derivation(const LieAlgebra& alg, const AlgebraVector& x) { return -alg.ad(x); }

std::optional<AlgebraVector> solve_inner(const LieAlgebra& alg, const Matrix& d) {
  const int n = alg.dim();
  Matrix a(n * n, n);
  for (int i = 0; i < n; ++i) {
    const Matrix m = -alg.ad(alg.basis_vector(i));
    a.col(i) = Eigen::Map<const AlgebraVector>(m.data(), n * n);
  }
  const AlgebraVector rhs = Eigen::Map<const AlgebraVector>(d.data(), n * n);
  const AlgebraVector x = a.completeOrthogonalDecomposition().solve(rhs);
  const double residual = (a * x - rhs).cwiseAbs().maxCoeff();
  if (residual > tol_for(d.cwiseAbs().maxCoeff())) return std::nullopt;
  return x;
}

Subspace bracket_span(const LieAlgebra& alg, const Subspace& a, const Subspace& b) {
  std::vector<AlgebraVector> gens;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) gens.push_back(alg.bracket(a.vector(i), b.vector(j)));
  return Subspace::span(alg.dim(), gens);
}

Subspace image(const Matrix& map, const Subspace& s) {
  if (s.dim() == 0) return Subspace::zero(static_cast<int>(map.rows()));
  return Subspace::span(map * s.basis());
}

Subspace derived_subalgebra(const LieAlgebra& alg) {
  const Subspace g = Subspace::full(alg.dim());
  return bracket_span(alg, g, g);
}

Subspace normalizer(const LieAlgebra& alg, const Subspace& delta) {
  const int n = alg.dim();
  const Matrix ann = delta.annihilator();
  if (ann.rows() == 0 || delta.dim() == 0) return Subspace::full(n);
  // Y -> ann * [Y, b] = -ann * ad(b) Y for every basis vector b of delta.
  Matrix constraints(ann.rows() * delta.dim(), n);
  for (int k = 0; k < delta.dim(); ++k)
    constraints.middleRows(k * ann.rows(), ann.rows()) = -ann * alg.ad(delta.vector(k));
  return Subspace::span(null_space(constraints));
}

Subspace preimage(const Matrix& d, const Subspace& delta) {
  const Matrix ann = delta.annihilator();
  if (ann.rows() == 0) return Subspace::full(static_cast<int>(d.cols()));
  return Subspace::span(null_space(ann * d));
}

SubspaceClass subspace_classify(const LieAlgebra& alg, const Subspace& delta) {
  SubspaceClass c;
  c.is_subalgebra = delta.contains(bracket_span(alg, delta, delta));
  c.is_ideal = delta.contains(bracket_span(alg, Subspace::full(alg.dim()), delta));
  return c;
}

Subspace invariant_hull(const LieAlgebra& alg, const Subspace& h, const Subspace& seed) {
  Subspace v = seed;
  for (int step = 0; step <= alg.dim(); ++step) {
    const Subspace next = v + bracket_span(alg, h, v);
    if (next.dim() == v.dim()) return v;
    v = next;
  }
  throw InvariantViolation("invariant_hull did not stabilize");
}

Subspace generated_subalgebra(const LieAlgebra& alg, const Subspace& seed) {
  Subspace v = seed;
  for (int step = 0; step <= alg.dim(); ++step) {
    const Subspace next = v + bracket_span(alg, v, v);
    if (next.dim() == v.dim()) return v;
    v = next;
  }
  throw InvariantViolation("generated_subalgebra did not stabilize");
}

bool condition_hz(const LieAlgebra& alg, const Subspace& h, const Matrix& d, const OneForm& omega) {
  if (!subspace_classify(alg, h).is_subalgebra)
    throw ValidationError("condition_hz: " + h.describe(alg.labels()) + " is not a subalgebra");
  const Subspace hull = invariant_hull(alg, h, image(d, h));
  const double w = omega.cwiseAbs().maxCoeff();
  for (int i = 0; i < hull.dim(); ++i) {
    const AlgebraVector b = hull.vector(i);
    if (std::abs(omega * b) > kExactTol * std::max(1.0, w) * std::max(1.0, b.cwiseAbs().maxCoeff()))
      return false;
  }
  return true;
}

Subspace invariant_core(const LieAlgebra& alg, const Subspace& h, const Subspace& delta) {
  Subspace v = delta;
  for (int step = 0; step <= alg.dim(); ++step) {
    if (v.dim() == 0) return v;
    const Matrix ann = v.annihilator();
    if (ann.rows() == 0) return v;
    // Coefficient vectors c with [Z, V c] in V for every basis vector Z of h.
    Matrix constraints(ann.rows() * h.dim(), v.dim());
    for (int k = 0; k < h.dim(); ++k)
      constraints.middleRows(k * ann.rows(), ann.rows()) = ann * alg.ad(h.vector(k)) * v.basis();
    if (constraints.rows() == 0) return v;
    const Matrix kernel = null_space(constraints);
    if (kernel.cols() == v.dim()) return v;
    v = kernel.cols() == 0 ? Subspace::zero(alg.dim()) : Subspace::span(v.basis() * kernel);
  }
  throw InvariantViolation("invariant_core did not stabilize");
}

Solvability solvability(const LieAlgebra& alg) {
  const Subspace g = Subspace::full(alg.dim());
  Solvability s;
  Subspace derived = g;
  Subspace central = g;
  for (int step = 0; step <= alg.dim(); ++step) {
    derived = bracket_span(alg, derived, derived);
    central = bracket_span(alg, g, central);
  }
  s.solvable = derived.is_zero();
  s.nilpotent = central.is_zero();
  return s;
}

}  // namespace arslie
