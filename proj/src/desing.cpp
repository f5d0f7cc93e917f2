#include "arslie/desing.hpp"

#include "arslie/errors.hpp"
#include "arslie/output.hpp"
#include "arslie/ode.hpp"

#include <algorithm>
#include <cmath>

namespace arslie {

namespace {

LieAlgebra lifted_algebra(const SimpleArs& ars) {
  const LieAlgebra& alg = ars.algebra();
  const Matrix& d = ars.d();
  const int n = alg.dim();
  const int m = n + 1;
  std::vector<double> c(static_cast<std::size_t>(m * m * m), 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[static_cast<std::size_t>((i * m + j) * m + k)]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) at(i, j, k) = alg.structure(i, j, k);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      at(n, j, k) = -d(k, j);
      at(j, n, k) = d(k, j);
    }
  std::vector<std::string> labels = alg.labels();
  labels.push_back("Xt");
  return LieAlgebra(alg.name() + "_lift", labels, c);
}

struct Parts {
  GroupPoint g;
  Eigen::VectorXd u;
  AlgebraVector u_part;  // sum u_j Y_j in g
  double v = 0.0;
};

Parts split(const LiftedStructure& lift, const LiftedState& st) {
  const SimpleArs& ars = lift.base;
  const int cd = ars.chart().coord_dim();
  const int n = ars.dim();
  Parts p;
  p.g = st.p.head(cd);
  p.u.resize(n - 1);
  p.u_part = AlgebraVector::Zero(n);
  for (int j = 0; j < n - 1; ++j) {
    p.u(j) = st.lambda * lift.frame[static_cast<std::size_t>(j)];
    p.u_part += p.u(j) * ars.delta_basis()[static_cast<std::size_t>(j)];
  }
  p.v = st.lambda(n);
  return p;
}

LiftedDerivative rhs_raw(const LiftedStructure& lift, const LiftedState& st) {
  const SimpleArs& ars = lift.base;
  const int cd = ars.chart().coord_dim();
  const int n = ars.dim();
  const Parts p = split(lift, st);
  const Matrix l = ars.chart().left_jacobian(p.g);
  LiftedDerivative d;
  d.p_dot.resize(cd + 1);
  d.p_dot.head(cd) = l * (p.u_part + p.v * f_map_raw(ars.field(), p.g));
  d.p_dot(cd) = p.v;
  AlgebraVector w(n + 1);
  w.head(n) = p.u_part;
  w(n) = p.v;
  d.lambda_dot = st.lambda * lift.algebra.ad(w);
  return d;
}

LiftedSample make_sample(const LiftedStructure& lift, double t, const LiftedState& st) {
  const Parts p = split(lift, st);
  LiftedSample smp;
  smp.t = t;
  smp.state = st;
  smp.v = p.v;
  smp.u = p.u;
  smp.H = 0.5 * (p.v * p.v + p.u.squaredNorm());
  smp.s = conjugate_s(lift, st);
  return smp;
}

}  // namespace

LiftedStructure lift(const SimpleArs& ars) {
  const int n = ars.dim();
  LieAlgebra alg = lifted_algebra(ars);
  std::vector<AlgebraVector> frame;
  for (const AlgebraVector& y : ars.delta_basis()) {
    AlgebraVector e = AlgebraVector::Zero(n + 1);
    e.head(n) = y;
    frame.push_back(e);
  }
  frame.push_back(AlgebraVector::Unit(n + 1, n));
  const Subspace dist = Subspace::span(n + 1, frame);
  const Subspace gen = generated_subalgebra(alg, dist);
  if (!gen.is_full())
    throw InvariantViolation("lifted distribution generates only " + gen.describe(alg.labels()));
  return {ars, std::move(alg), dist, std::move(frame)};
}

LiftedPoint lifted_multiply(const LiftedStructure& lift, const LiftedPoint& a, const LiftedPoint& b, double step) {
  const GroupChart& chart = lift.base.chart();
  const int cd = chart.coord_dim();
  if (a.size() != cd + 1 || b.size() != cd + 1) throw ValidationError("lifted point has wrong length");
  LiftedPoint out(cd + 1);
  out.head(cd) = chart.multiply(flow(lift.base.field(), a.head(cd), b(cd), step), b.head(cd));
  out(cd) = a(cd) + b(cd);
  return out;
}

Matrix lifted_frame(const LiftedStructure& lift, const LiftedPoint& p) {
  const SimpleArs& ars = lift.base;
  const int cd = ars.chart().coord_dim();
  const int n = ars.dim();
  const GroupPoint g = p.head(cd);
  const Matrix l = ars.chart().left_jacobian(g);
  Matrix m = Matrix::Zero(cd + 1, n);
  for (int j = 0; j < n - 1; ++j) m.col(j).head(cd) = l * ars.delta_basis()[static_cast<std::size_t>(j)];
  m.col(n - 1).head(cd) = linear_field_at(ars.field(), g);
  m(cd, n - 1) = 1.0;
  return m;
}

LiftedState lifted_state(const LiftedStructure& lift, const GroupPoint& g, double tau, const OneForm& lambda,
                         double s) {
  const SimpleArs& ars = lift.base;
  const int n = ars.dim();
  ars.chart().validate(g);
  if (lambda.size() != n) throw ValidationError("base covector has wrong length");
  LiftedState st;
  st.p.resize(g.size() + 1);
  st.p.head(g.size()) = g;
  st.p(g.size()) = tau;
  st.lambda.resize(n + 1);
  st.lambda.head(n) = lambda;
  st.lambda(n) = s + lambda * f_map(ars.field(), g);
  return st;
}

double conjugate_s(const LiftedStructure& lift, const LiftedState& st) {
  const SimpleArs& ars = lift.base;
  const int cd = ars.chart().coord_dim();
  const int n = ars.dim();
  return st.lambda(n) - st.lambda.head(n) * f_map_raw(ars.field(), st.p.head(cd));
}

double lifted_hamiltonian(const LiftedStructure& lift, const LiftedState& st) {
  const Parts p = split(lift, st);
  return 0.5 * (p.v * p.v + p.u.squaredNorm());
}

LiftedDerivative lifted_rhs(const LiftedStructure& lift, const LiftedState& st) {
  lift.base.chart().validate(st.p.head(lift.base.chart().coord_dim()));
  return rhs_raw(lift, st);
}

LiftedTrajectory lifted_integrate(const LiftedStructure& lift, const LiftedState& s0, double T,
                                  const IntegrateOptions& opt) {
  const GroupChart& chart = lift.base.chart();
  const int cd = chart.coord_dim();
  const int n = lift.base.dim();
  if (s0.p.size() != cd + 1 || s0.lambda.size() != n + 1) throw ValidationError("lifted state has wrong shape");
  chart.validate(s0.p.head(cd));
  if (!(T >= 0.0) || !std::isfinite(T)) throw ValidationError("integration time must be finite and >= 0");
  if (!(opt.step > 0.0)) throw ValidationError("integration step must be positive");

  auto pack = [&](const LiftedState& st) {
    State y(cd + 1 + n + 1);
    y.head(cd + 1) = st.p;
    y.tail(n + 1) = st.lambda.transpose();
    return y;
  };
  auto unpack = [&](const State& y) { return LiftedState{y.head(cd + 1), y.tail(n + 1).transpose()}; };
  const Rhs rhs = [&](double, const State& y) {
    const LiftedDerivative d = rhs_raw(lift, unpack(y));
    State dy(y.size());
    dy.head(cd + 1) = d.p_dot;
    dy.tail(n + 1) = d.lambda_dot.transpose();
    return dy;
  };

  LiftedTrajectory traj;
  traj.step = opt.step;
  State y = pack(s0);
  traj.samples.push_back(make_sample(lift, 0.0, s0));
  const double h0 = traj.samples.front().H;
  const double s_init = traj.samples.front().s;
  const long steps = T == 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(T / opt.step - 1e-9)));
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * opt.step;
    const double t_next = (k + 1 == steps) ? T : static_cast<double>(k + 1) * opt.step;
    y = rk4_step(rhs, t, y, t_next - t);
    y.head(cd) = chart.normalize(y.head(cd));
    if (!y.allFinite() || !chart.is_valid(y.head(cd)))
      throw NumericFailure(chart.name() + ": lifted trajectory left the chart domain", t_next);
    LiftedSample smp = make_sample(lift, t_next, unpack(y));
    const double drift = std::abs(smp.H - h0);
    traj.max_drift = std::max(traj.max_drift, drift);
    traj.max_s_drift = std::max(traj.max_s_drift, std::abs(smp.s - s_init));
    if (drift > opt.drift_bound)
      throw NumericFailure("energy drift " + format_number(drift) + " exceeds bound " + format_number(opt.drift_bound), t_next);
    traj.samples.push_back(std::move(smp));
  }
  return traj;
}

double sample_quadrature(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size()) throw ValidationError("quadrature needs matching sample arrays");
  const int m = static_cast<int>(t.size());
  if (m < 2) return 0.0;
  const int width = std::min(4, m);
  const double g = 1.0 / std::sqrt(3.0);
  double total = 0.0;
  for (int k = 0; k + 1 < m; ++k) {
    const int start = std::clamp(k - 1, 0, m - width);
    const double half = 0.5 * (t[k + 1] - t[k]);
    const double mid = 0.5 * (t[k + 1] + t[k]);
    for (double x : {mid - half * g, mid + half * g}) {
      double val = 0.0;
      for (int i = start; i < start + width; ++i) {
        double li = 1.0;
        for (int j = start; j < start + width; ++j)
          if (j != i) li *= (x - t[j]) / (t[i] - t[j]);
        val += li * f[i];
      }
      total += half * val;
    }
  }
  return total;
}

Projection project(const LiftedStructure& lift, const LiftedTrajectory& traj) {
  const SimpleArs& ars = lift.base;
  const int cd = ars.chart().coord_dim();
  const int n = ars.dim();
  Projection out;
  if (traj.samples.empty()) return out;
  std::vector<double> ts, vs, lifted_speed, base_speed;
  for (const LiftedSample& smp : traj.samples) {
    const GroupPoint g = smp.state.p.head(cd);
    out.samples.push_back({smp.t, g, smp.v, smp.u});
    ts.push_back(smp.t);
    vs.push_back(smp.v);
    lifted_speed.push_back(std::sqrt(smp.v * smp.v + smp.u.squaredNorm()));

    // Cheapest base controls producing the same velocity.
    Matrix frame(n, n);
    frame.col(0) = f_map(ars.field(), g);
    for (int j = 0; j < n - 1; ++j) frame.col(j + 1) = ars.delta_basis()[static_cast<std::size_t>(j)];
    Eigen::VectorXd controls(n);
    controls(0) = smp.v;
    controls.tail(n - 1) = smp.u;
    const AlgebraVector w = frame * controls;
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(frame);
    cod.setThreshold(1e-12);
    base_speed.push_back(cod.solve(w).norm());
    if (in_locus(ars, g)) out.touches_locus = true;
  }
  out.tau_increment = traj.samples.back().state.p(cd) - traj.samples.front().state.p(cd);
  out.tau_quadrature = sample_quadrature(ts, vs);
  out.lifted_length = sample_quadrature(ts, lifted_speed);
  out.projected_length = sample_quadrature(ts, base_speed);
  if (std::abs(out.tau_increment - out.tau_quadrature) > 1e-8)
    throw InvariantViolation("tau increment " + format_number(out.tau_increment) + " differs from the integral of v " +
                             format_number(out.tau_quadrature));
  if (out.projected_length > out.lifted_length + 1e-10)
    throw InvariantViolation("projected length exceeds lifted length");
  if (!out.touches_locus && std::abs(out.projected_length - out.lifted_length) > 1e-10)
    throw InvariantViolation("projected and lifted lengths differ off the singular locus");
  return out;
}

}  // namespace arslie
