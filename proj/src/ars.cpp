#include "arslie/ars.hpp"

#include "arslie/errors.hpp"

#include <algorithm>
#include <cmath>

namespace arslie {

SimpleArs SimpleArs::scaled_omega(double c) const {
  SimpleArs copy = *this;
  copy.omega_ *= c;
  return copy;
}

SimpleArs build_ars(std::shared_ptr<const GroupChart> chart, const Matrix& d,
                    const std::vector<AlgebraVector>& delta_basis) {
  const LieAlgebra& alg = chart->algebra();
  const int n = alg.dim();
  if (static_cast<int>(delta_basis.size()) != n - 1)
    throw ValidationError("distribution needs " + std::to_string(n - 1) + " generators, got " +
                          std::to_string(delta_basis.size()));
  for (const AlgebraVector& v : delta_basis)
    if (v.size() != n) throw ValidationError("distribution generator has wrong length");
  const Subspace delta = Subspace::span(n, delta_basis);
  if (delta.dim() != n - 1) throw ValidationError("distribution generators are linearly dependent");

  LinearField field(chart, d);
  if (d.cwiseAbs().maxCoeff() == 0.0)
    throw ValidationError("D = 0: the linear field vanishes identically and the frame is singular everywhere");

  const Matrix ann = delta.annihilator();
  OneForm omega = ann.row(0);
  int k = 0;
  while (delta.contains(AlgebraVector(AlgebraVector::Unit(n, k)))) ++k;
  const AlgebraVector y_n = AlgebraVector::Unit(n, k);
  omega /= omega(k);

  const Subspace generated = delta + bracket_span(alg, delta, delta) + image(d, delta);
  if (!generated.is_full())
    throw ValidationError("rank condition fails: Delta + [Delta,Delta] + D Delta = " + generated.describe(alg.labels()) +
                          " has dimension " + std::to_string(generated.dim()) + " < " + std::to_string(n));

  // psi vanishes identically exactly when every word ad(Z1)...ad(Zm) D Y is
  // annihilated by omega, i.e. when the whole algebra satisfies (HZ).
  if (condition_hz(alg, Subspace::full(n), d, omega))
    throw ValidationError("the frame is singular everywhere: psi = <omega, F> vanishes identically");

  return SimpleArs(std::move(field), delta_basis, delta, omega, y_n);
}

double psi(const SimpleArs& ars, const GroupPoint& g) { return ars.omega() * f_map(ars.field(), g); }

OneForm grad_psi(const SimpleArs& ars, const GroupPoint& g) {
  const AlgebraVector f = f_map(ars.field(), g);
  return ars.omega() * (ars.d() + ars.algebra().ad(f));
}

double normalized_psi(const SimpleArs& ars, const GroupPoint& g) {
  return std::abs(psi(ars, g)) / (grad_psi(ars, g).norm() + 1.0);
}

bool in_locus(const SimpleArs& ars, const GroupPoint& g, double tol) { return normalized_psi(ars, g) <= tol; }

std::string to_string(ZxConsistency z) {
  switch (z) {
    case ZxConsistency::consistent:
      return "consistent";
    case ZxConsistency::inconsistent:
      return "inconsistent";
    case ZxConsistency::unsampled:
      return "unsampled";
  }
  return "unsampled";
}

const Verdict& LocusReport::verdict(const std::string& id) const {
  for (const Verdict& v : verdicts)
    if (v.id == id) return v;
  throw InvariantViolation("locus report has no verdict '" + id + "'");
}

LocusReport classify_locus(const SimpleArs& ars) {
  const LieAlgebra& alg = ars.algebra();
  const auto& labels = alg.labels();
  LocusReport r;

  const SubspaceClass dc = subspace_classify(alg, ars.delta());
  r.delta_subalgebra = dc.is_subalgebra;
  r.delta_ideal = dc.is_ideal;
  const Solvability s = solvability(alg);
  r.solvable = s.solvable;
  r.nilpotent = s.nilpotent;
  r.d_star_omega = ars.omega() * ars.d();
  r.locally_submanifold = r.d_star_omega.cwiseAbs().maxCoeff() > kExactTol * std::max(1.0, ars.omega().cwiseAbs().maxCoeff());
  r.z_tangent = preimage(ars.d(), ars.delta());
  r.kernel_subalgebra = subspace_classify(alg, r.z_tangent).is_subalgebra;
  r.hz_on_kernel = r.kernel_subalgebra && condition_hz(alg, r.z_tangent, ars.d(), ars.omega());
  r.kernel_of_d = Subspace::span(null_space(ars.d()));
  const std::string z = r.z_tangent.describe(labels);

  // Sampled comparison of the locus with the zeros of the linear field.
  const GroupChart& chart = ars.chart();
  const std::vector<GroupPoint> pts = sample_locus(ars, chart.default_box(), default_resolution(chart.param_dim()));
  r.locus_samples = pts.size();
  if (!pts.empty()) {
    r.zx = ZxConsistency::consistent;
    for (const GroupPoint& g : pts)
      if (linear_field_at(ars.field(), g).cwiseAbs().maxCoeff() > 1e-6) {
        r.zx = ZxConsistency::inconsistent;
        break;
      }
  }

  Verdict submanifold{"submanifold", r.delta_subalgebra, ""};
  submanifold.conclusion = r.delta_subalgebra
                               ? "Delta is a subalgebra: the locus is an analytic embedded hypersurface with tangent "
                                 "space " + z + " at e"
                               : "Delta is not a subalgebra: no global submanifold statement";

  Verdict ideal{"ideal_subgroup", r.delta_ideal, ""};
  ideal.conclusion = r.delta_ideal ? "Delta is an ideal (contains the derived algebra): the locus is a Lie subgroup with "
                                     "Lie algebra ker D*omega = " + z
                                   : "Delta is not an ideal";

  const bool solvable_branch = r.solvable && r.delta_subalgebra;
  Verdict solv{"solvable_subgroup", solvable_branch, ""};
  solv.conclusion = solvable_branch ? "g is solvable and Delta a subalgebra: the locus is a codimension-one subgroup "
                                      "with Lie algebra " + z
                                    : (r.solvable ? "g is solvable but Delta is not a subalgebra"
                                                  : "g is not solvable");

  Verdict fixed{"fixed_point_locus", r.zx == ZxConsistency::consistent, ""};
  switch (r.zx) {
    case ZxConsistency::consistent:
      fixed.conclusion = "every sampled locus point is a zero of the linear field (consistent with locus = zeros of "
                         "the field, not a proof); if so it is a closed subgroup with Lie algebra ker D = " +
                         r.kernel_of_d.describe(labels);
      break;
    case ZxConsistency::inconsistent:
      fixed.conclusion = "some sampled locus point is not a zero of the linear field";
      break;
    case ZxConsistency::unsampled:
      fixed.conclusion = "no locus point found on the sampling grid";
      break;
  }

  r.subgroup = r.delta_ideal || solvable_branch;
  if (r.subgroup && !r.hz_on_kernel)
    throw InvariantViolation("locus declared a subgroup but ker D*omega = " + z +
                             " does not satisfy (HZ); the classification is inconsistent");

  const bool local = r.locally_submanifold && r.kernel_subalgebra && r.hz_on_kernel;
  r.not_codim_one_subgroup = r.locally_submanifold && !local;
  Verdict hz{"hz_local_subgroup", local, ""};
  if (!r.locally_submanifold)
    hz.conclusion = "D*omega = 0: the identity is a singular point of psi; no local subgroup statement";
  else if (local)
    hz.conclusion = "ker D*omega = " + z + " is a subalgebra satisfying (HZ): the group it generates lies in the locus "
                    "and coincides with it near e";
  else if (!r.kernel_subalgebra)
    hz.conclusion = "ker D*omega = " + z + " is not a subalgebra: the locus cannot be a codimension-one subgroup";
  else
    hz.conclusion = "condition (HZ) fails on ker D*omega = " + z + ": the locus is not a subgroup, not even locally";

  r.verdicts = {submanifold, ideal, solv, fixed, hz};
  return r;
}

Subspace abnormal_algebra(const SimpleArs& ars) {
  const LieAlgebra& alg = ars.algebra();
  const int n = alg.dim();
  const Subspace a = ars.delta().intersect(normalizer(alg, ars.delta())).intersect(preimage(ars.d(), ars.delta()));
  if (!a.contains(bracket_span(alg, a, a))) throw InvariantViolation("abnormal subspace is not bracket-closed");
  if (a.dim() > n - 2) throw InvariantViolation("abnormal subalgebra has dimension above n - 2");
  if (subspace_classify(alg, ars.delta()).is_subalgebra && a.dim() != n - 2)
    throw InvariantViolation("Delta is a subalgebra but the abnormal subalgebra does not have dimension n - 2");
  return a;
}

int default_resolution(int params) { return params <= 3 ? 21 : 5; }

namespace {

struct GridLine {
  int axis;
  std::vector<int> fixed;  // node indices on the other axes
};

std::vector<GridLine> grid_lines(int params, int resolution) {
  std::vector<GridLine> lines;
  long others = 1;
  for (int i = 0; i < params - 1; ++i) others *= resolution;
  for (int axis = 0; axis < params; ++axis)
    for (long idx = 0; idx < others; ++idx) {
      GridLine l{axis, std::vector<int>(params, 0)};
      long rest = idx;
      for (int k = 0; k < params; ++k) {
        if (k == axis) continue;
        l.fixed[k] = static_cast<int>(rest % resolution);
        rest /= resolution;
      }
      lines.push_back(std::move(l));
    }
  return lines;
}

double node(const std::pair<double, double>& range, int i, int resolution) {
  return range.first + (range.second - range.first) * i / (resolution - 1);
}

std::vector<GroupPoint> scan_line(const SimpleArs& ars, const Box& box, int resolution, const GridLine& line) {
  const GroupChart& chart = ars.chart();
  const int p = static_cast<int>(box.size());
  Eigen::VectorXd params(p);
  for (int k = 0; k < p; ++k) params(k) = node(box[k], line.fixed[k], resolution);
  auto point_at = [&](double s) {
    Eigen::VectorXd q = params;
    q(line.axis) = s;
    return chart.from_params(q);
  };
  std::vector<GroupPoint> found;
  std::vector<double> values(resolution);
  std::vector<double> coords(resolution);
  for (int i = 0; i < resolution; ++i) {
    coords[i] = node(box[line.axis], i, resolution);
    const GroupPoint g = point_at(coords[i]);
    values[i] = psi(ars, g);
    if (in_locus(ars, g)) found.push_back(g);
  }
  for (int i = 0; i + 1 < resolution; ++i) {
    if (!((values[i] < 0 && values[i + 1] > 0) || (values[i] > 0 && values[i + 1] < 0))) continue;
    double lo = coords[i], hi = coords[i + 1], flo = values[i];
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = psi(ars, point_at(mid));
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const GroupPoint a = point_at(lo), b = point_at(hi);
    const GroupPoint& best = std::abs(psi(ars, a)) <= std::abs(psi(ars, b)) ? a : b;
    if (in_locus(ars, best)) found.push_back(best);
  }
  return found;
}

std::vector<GroupPoint> merge(std::vector<std::vector<GroupPoint>>& per_line) {
  std::vector<GroupPoint> all;
  for (auto& v : per_line)
    for (auto& g : v) all.push_back(std::move(g));
  auto less = [](const GroupPoint& a, const GroupPoint& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  };
  std::sort(all.begin(), all.end(), less);
  all.erase(std::unique(all.begin(), all.end(), [](const GroupPoint& a, const GroupPoint& b) { return a == b; }),
            all.end());
  return all;
}

void check_box(const SimpleArs& ars, const Box& box, int resolution) {
  if (static_cast<int>(box.size()) != ars.chart().param_dim())
    throw ValidationError("sampling box needs " + std::to_string(ars.chart().param_dim()) + " ranges");
  if (resolution < 2) throw ValidationError("sampling resolution must be at least 2");
  for (const auto& r : box)
    if (!(r.first < r.second)) throw ValidationError("sampling box range must satisfy lo < hi");
}

}  // namespace

std::vector<GroupPoint> sample_locus(const SimpleArs& ars, const Box& box, int resolution) {
  check_box(ars, box, resolution);
  const std::vector<GridLine> lines = grid_lines(static_cast<int>(box.size()), resolution);
  std::vector<std::vector<GroupPoint>> per_line(lines.size());
  const long count = static_cast<long>(lines.size());
  // Exceptions cannot cross the parallel region; the first one is rethrown.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < count; ++i) {
    try {
      per_line[i] = scan_line(ars, box, resolution, lines[i]);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return merge(per_line);
}

std::vector<GroupPoint> sample_locus_serial(const SimpleArs& ars, const Box& box, int resolution) {
  check_box(ars, box, resolution);
  const std::vector<GridLine> lines = grid_lines(static_cast<int>(box.size()), resolution);
  std::vector<std::vector<GroupPoint>> per_line(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) per_line[i] = scan_line(ars, box, resolution, lines[i]);
  return merge(per_line);
}

}  // namespace arslie
