#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <string>
#include <vector>

namespace arslie {

/// Coordinates of an element of the Lie algebra in its chosen basis.
using AlgebraVector = Eigen::VectorXd;
/// Coordinates of a covector (one-form on the algebra) in the dual basis.
/// Row vectors, so that pairing is `omega * y` and pullback is `omega * D`.
using OneForm = Eigen::RowVectorXd;
using Matrix = Eigen::MatrixXd;

/// Threshold used by every algebraic predicate (membership, rank, residuals).
inline constexpr double kExactTol = 1e-12;

struct RowEchelon {
  Matrix reduced;           // reduced row-echelon form; rows past rank() are zero
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Gauss-Jordan elimination with partial pivoting. Entries whose magnitude is
/// below tol * max(1, max|m|) are treated as zero and snapped to 0.
RowEchelon row_reduce(const Matrix& m, double tol = kExactTol);

int rank(const Matrix& m, double tol = kExactTol);

/// Basis of ker(m) as columns (m.cols() x nullity).
Matrix null_space(const Matrix& m, double tol = kExactTol);

/// Matrix exponential by scaling and squaring with a diagonal (6,6) Pade
/// approximant.
Matrix matrix_exp(const Matrix& a);

/// A linear subspace of R^n stored through a canonical basis: the columns are
/// the nonzero rows of the reduced row-echelon form of any spanning set, so two
/// equal subspaces always carry bitwise-identical bases.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  /// Span of the columns of `generators`.
  static Subspace span(const Matrix& generators, double tol = kExactTol);
  static Subspace span(int ambient, std::initializer_list<AlgebraVector> generators);
  static Subspace span(int ambient, const std::vector<AlgebraVector>& generators);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// ambient_dim() x dim() matrix whose columns form the canonical basis.
  const Matrix& basis() const { return basis_; }
  AlgebraVector vector(int i) const { return basis_.col(i); }

  bool contains(const AlgebraVector& v, double tol = kExactTol) const;
  bool contains(const Subspace& other, double tol = kExactTol) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Rows spanning the annihilator {w : w * v = 0 for all v in this}.
  Matrix annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b);

  /// Human-readable "span{...}" using the given basis labels.
  std::string describe(const std::vector<std::string>& labels) const;

 private:
  int ambient_ = 0;
  Matrix basis_;
};

/// Formats a vector as a linear combination of labelled basis elements,
/// e.g. "X - 2*Z".
std::string describe_vector(const AlgebraVector& v, const std::vector<std::string>& labels);

}  // namespace arslie
