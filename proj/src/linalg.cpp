#include "arslie/linalg.hpp"

#include "arslie/errors.hpp"

#include <cmath>
#include <cstdio>

namespace arslie {

namespace {

double scale_of(const Matrix& m) {
  double s = 1.0;
  if (m.size() > 0) s = std::max(s, m.cwiseAbs().maxCoeff());
  return s;
}

std::string format_coeff(double c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", c);
  return buf;
}

}  // namespace

RowEchelon row_reduce(const Matrix& m, double tol) {
  RowEchelon out;
  out.reduced = m;
  Matrix& r = out.reduced;
  const double eps = tol * scale_of(m);
  const int rows = static_cast<int>(r.rows());
  const int cols = static_cast<int>(r.cols());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int best = row;
    for (int i = row + 1; i < rows; ++i)
      if (std::abs(r(i, col)) > std::abs(r(best, col))) best = i;
    if (std::abs(r(best, col)) <= eps) {
      for (int i = row; i < rows; ++i) r(i, col) = 0.0;
      continue;
    }
    r.row(row).swap(r.row(best));
    r.row(row) /= r(row, col);
    r(row, col) = 1.0;
    for (int i = 0; i < rows; ++i) {
      if (i == row) continue;
      const double f = r(i, col);
      if (f != 0.0) {
        r.row(i) -= f * r.row(row);
        r(i, col) = 0.0;
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  for (int i = row; i < rows; ++i) r.row(i).setZero();
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < cols; ++j)
      if (std::abs(r(i, j)) <= eps) r(i, j) = 0.0;
  return out;
}

int rank(const Matrix& m, double tol) { return row_reduce(m, tol).rank(); }

Matrix null_space(const Matrix& m, double tol) {
  const RowEchelon e = row_reduce(m, tol);
  const int cols = static_cast<int>(m.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  Matrix out(cols, cols - e.rank());
  int k = 0;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    AlgebraVector v = AlgebraVector::Zero(cols);
    v(f) = 1.0;
    for (int i = 0; i < e.rank(); ++i) v(e.pivots[i]) = -e.reduced(i, f);
    out.col(k++) = v;
  }
  return out;
}

Matrix matrix_exp(const Matrix& a) {
  constexpr int q = 6;
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw ValidationError("matrix_exp: matrix is not square");
  if (n == 0) return a;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix x = a / std::ldexp(1.0, s);

  Matrix num = Matrix::Identity(n, n);
  Matrix den = Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  double c = 1.0;
  for (int k = 1; k <= q; ++k) {
    c *= static_cast<double>(q - k + 1) / (k * (2 * q - k + 1));
    power = power * x;
    num += c * power;
    den += ((k % 2) ? -c : c) * power;
  }
  Matrix e = den.partialPivLu().solve(num);
  for (int i = 0; i < s; ++i) e = e * e;
  return e;
}

Subspace Subspace::zero(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(ambient, 0);
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::Identity(ambient, ambient);
  return s;
}

Subspace Subspace::span(const Matrix& generators, double tol) {
  const int n = static_cast<int>(generators.rows());
  if (generators.cols() == 0) return zero(n);
  const RowEchelon e = row_reduce(generators.transpose(), tol);
  Subspace s;
  s.ambient_ = n;
  s.basis_ = e.reduced.topRows(e.rank()).transpose();
  return s;
}

Subspace Subspace::span(int ambient, std::initializer_list<AlgebraVector> generators) {
  return span(ambient, std::vector<AlgebraVector>(generators));
}

Subspace Subspace::span(int ambient, const std::vector<AlgebraVector>& generators) {
  Matrix m(ambient, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient)
      throw ValidationError("Subspace::span: generator has wrong dimension");
    m.col(static_cast<Eigen::Index>(i)) = generators[i];
  }
  return span(m);
}

bool Subspace::contains(const AlgebraVector& v, double tol) const {
  if (v.size() != ambient_) throw ValidationError("Subspace::contains: dimension mismatch");
  Matrix m(ambient_, dim() + 1);
  m << basis_, v;
  return rank(m, tol) == dim();
}

bool Subspace::contains(const Subspace& other, double tol) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(AlgebraVector(other.basis_.col(i)), tol)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw ValidationError("Subspace sum: dimension mismatch");
  Matrix m(ambient_, dim() + other.dim());
  m << basis_, other.basis_;
  return span(m);
}

Matrix Subspace::annihilator() const {
  if (dim() == 0) return Matrix::Identity(ambient_, ambient_);
  return null_space(basis_.transpose()).transpose();
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw ValidationError("Subspace intersect: dimension mismatch");
  const Matrix a = annihilator();
  const Matrix b = other.annihilator();
  Matrix stacked(a.rows() + b.rows(), ambient_);
  stacked << a, b;
  if (stacked.rows() == 0) return full(ambient_);
  return span(null_space(stacked));
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.contains(b);
}

std::string Subspace::describe(const std::vector<std::string>& labels) const {
  if (dim() == 0) return "{0}";
  std::string out = "span{";
  for (int i = 0; i < dim(); ++i) {
    if (i) out += ", ";
    out += describe_vector(basis_.col(i), labels);
  }
  return out + "}";
}

std::string describe_vector(const AlgebraVector& v, const std::vector<std::string>& labels) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    const double c = v(i);
    if (c == 0.0) continue;
    const std::string name = i < static_cast<int>(labels.size()) ? labels[i] : "e" + std::to_string(i + 1);
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1.0) out += format_coeff(mag) + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace arslie
