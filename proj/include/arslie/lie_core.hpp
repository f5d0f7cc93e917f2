#pragma once

#include "arslie/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arslie {

/// A finite-dimensional real Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c[i][j][k] e_k. Construction checks antisymmetry and the
/// Jacobi identity.
class LieAlgebra {
 public:
  /// `structure` is flattened as c[(i*n + j)*n + k].
  LieAlgebra(std::string name, std::vector<std::string> labels, const std::vector<double>& structure);

  static LieAlgebra abelian(int n);
  /// Affine algebra of the line, basis (X, Y) with [X, Y] = Y.
  static LieAlgebra aff2();
  /// Basis (X, Y, Z) with [X, Y] = Z, Z central.
  static LieAlgebra heisenberg();
  /// Basis (H, X, Y) with [H, X] = 2X, [H, Y] = -2Y, [X, Y] = H.
  static LieAlgebra sl2();

  int dim() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double structure(int i, int j, int k) const { return ad_basis_[i](k, j); }

  AlgebraVector basis_vector(int i) const;
  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;
  /// Matrix of Y -> [x, Y]; column j is [x, e_j].
  Matrix ad(const AlgebraVector& x) const;

  double antisymmetry_residual() const;
  double jacobi_residual() const;

 private:
  std::string name_;
  int n_;
  std::vector<std::string> labels_;
  std::vector<Matrix> ad_basis_;
};

AlgebraVector bracket(const LieAlgebra& alg, const AlgebraVector& x, const AlgebraVector& y);

struct DerivationReport {
  double max_residual = 0.0;
  bool passes = false;
};

/// Largest componentwise Leibniz residual D[e_i,e_j] - [De_i,e_j] - [e_i,De_j].
DerivationReport check_derivation(const LieAlgebra& alg, const Matrix& d);

/// -ad(x).
Matrix inner_derivation(const LieAlgebra& alg, const AlgebraVector& x);

/// Solves D = -ad(x) in the least-squares sense; returns x when the residual
/// is within the exactness tolerance.
std::optional<AlgebraVector> solve_inner(const LieAlgebra& alg, const Matrix& d);

/// span{[a, b] : a in A, b in B}.
Subspace bracket_span(const LieAlgebra& alg, const Subspace& a, const Subspace& b);
Subspace image(const Matrix& map, const Subspace& s);

Subspace derived_subalgebra(const LieAlgebra& alg);
Subspace normalizer(const LieAlgebra& alg, const Subspace& delta);
/// {Y : D Y in delta}.
Subspace preimage(const Matrix& d, const Subspace& delta);

struct SubspaceClass {
  bool is_subalgebra = false;
  bool is_ideal = false;
};
SubspaceClass subspace_classify(const LieAlgebra& alg, const Subspace& delta);

/// Smallest ad(h)-invariant subspace containing seed.
Subspace invariant_hull(const LieAlgebra& alg, const Subspace& h, const Subspace& seed);

/// True iff omega annihilates invariant_hull(h, D h). Throws ValidationError
/// when h is not a subalgebra.
bool condition_hz(const LieAlgebra& alg, const Subspace& h, const Matrix& d, const OneForm& omega);

/// Smallest subalgebra containing seed.
Subspace generated_subalgebra(const LieAlgebra& alg, const Subspace& seed);

/// Largest ad(h)-invariant subspace contained in delta.
Subspace invariant_core(const LieAlgebra& alg, const Subspace& h, const Subspace& delta);

struct Solvability {
  bool solvable = false;
  bool nilpotent = false;
};
Solvability solvability(const LieAlgebra& alg);

}  // namespace arslie
