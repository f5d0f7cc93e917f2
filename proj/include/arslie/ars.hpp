#pragma once

#include "arslie/group_models.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arslie {

/// Relative tolerance for membership in the singular locus:
/// |psi| / (|grad psi| + 1) <= kLocusTol.
inline constexpr double kLocusTol = 1e-9;

/// One linear field plus n-1 left-invariant fields, declared orthonormal.
class SimpleArs {
 public:
  const GroupChart& chart() const { return field_.chart(); }
  std::shared_ptr<const GroupChart> chart_ptr() const { return field_.chart_ptr(); }
  const LieAlgebra& algebra() const { return field_.chart().algebra(); }
  const LinearField& field() const { return field_; }
  const Matrix& d() const { return field_.derivation(); }
  int dim() const { return algebra().dim(); }

  const std::vector<AlgebraVector>& delta_basis() const { return delta_basis_; }
  const Subspace& delta() const { return delta_; }
  const OneForm& omega() const { return omega_; }
  const AlgebraVector& y_n() const { return y_n_; }

  /// Same structure with omega multiplied by c. The zero set of psi does not
  /// depend on this choice; psi itself scales by c.
  SimpleArs scaled_omega(double c) const;

 private:
  friend SimpleArs build_ars(std::shared_ptr<const GroupChart>, const Matrix&, const std::vector<AlgebraVector>&);
  SimpleArs(LinearField field, std::vector<AlgebraVector> delta_basis, Subspace delta, OneForm omega, AlgebraVector y_n)
      : field_(std::move(field)),
        delta_basis_(std::move(delta_basis)),
        delta_(std::move(delta)),
        omega_(std::move(omega)),
        y_n_(std::move(y_n)) {}

  LinearField field_;
  std::vector<AlgebraVector> delta_basis_;
  Subspace delta_;
  OneForm omega_;
  AlgebraVector y_n_;
};

/// Validates the data and builds the structure. Throws ValidationError when the
/// basis is dependent, D is not a derivation, the rank condition
/// Delta + [Delta, Delta] + D Delta = g fails, or the frame is singular
/// everywhere.
SimpleArs build_ars(std::shared_ptr<const GroupChart> chart, const Matrix& d,
                    const std::vector<AlgebraVector>& delta_basis);

/// psi(g) = <omega, F(g)>; the singular locus is its zero set.
double psi(const SimpleArs& ars, const GroupPoint& g);
/// Left-trivialized differential of psi: Y -> <omega, D Y + [F(g), Y]>.
OneForm grad_psi(const SimpleArs& ars, const GroupPoint& g);
bool in_locus(const SimpleArs& ars, const GroupPoint& g, double tol = kLocusTol);
/// |psi| / (|grad psi| + 1).
double normalized_psi(const SimpleArs& ars, const GroupPoint& g);

enum class ZxConsistency { consistent, inconsistent, unsampled };
std::string to_string(ZxConsistency z);

struct Verdict {
  std::string id;
  bool applies = false;
  std::string conclusion;
};

struct LocusReport {
  bool delta_subalgebra = false;
  bool delta_ideal = false;
  bool solvable = false;
  bool nilpotent = false;
  /// D* omega != 0: the locus is a hypersurface near the identity.
  bool locally_submanifold = false;
  OneForm d_star_omega;
  /// D^-1 Delta, which equals ker D* omega.
  Subspace z_tangent;
  bool kernel_subalgebra = false;
  bool hz_on_kernel = false;
  Subspace kernel_of_d;
  ZxConsistency zx = ZxConsistency::unsampled;
  std::size_t locus_samples = 0;
  /// The locus is declared a subgroup by the ideal or the solvable criterion.
  bool subgroup = false;
  /// The tangent space at e is not a subalgebra satisfying (HZ), so the locus
  /// cannot be a codimension-one subgroup, not even locally.
  bool not_codim_one_subgroup = false;
  std::vector<Verdict> verdicts;

  const Verdict& verdict(const std::string& id) const;
};

/// Verdict identifiers, in report order.
inline const std::vector<std::string> kVerdictIds = {"submanifold", "ideal_subgroup", "solvable_subgroup",
                                                     "fixed_point_locus", "hz_local_subgroup"};

LocusReport classify_locus(const SimpleArs& ars);

/// Delta intersected with its normalizer and with D^-1 Delta.
Subspace abnormal_algebra(const SimpleArs& ars);

using Box = std::vector<std::pair<double, double>>;

/// Zeros of psi on the grid lines of a box in the chart's sampling parameters.
/// Sign changes are refined by bisection; grid nodes already in the locus are
/// kept. Output is sorted lexicographically and free of duplicates. Uses
/// OpenMP across grid lines.
std::vector<GroupPoint> sample_locus(const SimpleArs& ars, const Box& box, int resolution);
/// Single-threaded reference for sample_locus; returns identical output.
std::vector<GroupPoint> sample_locus_serial(const SimpleArs& ars, const Box& box, int resolution);

/// Grid resolution used when none is given: 21 nodes per axis up to three
/// parameters, coarser above.
int default_resolution(int params);

}  // namespace arslie
