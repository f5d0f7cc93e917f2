#include "arslie/extremals.hpp"

#include "arslie/errors.hpp"
#include "arslie/output.hpp"
#include "arslie/ode.hpp"

#include <cmath>
#include <exception>
#include <numbers>

namespace arslie {

namespace {

constexpr double kPi = std::numbers::pi;

void require_square(const GroupChart& chart) {
  if (chart.coord_dim() != chart.dim())
    throw ValidationError(chart.name() + ": chart covectors need as many coordinates as algebra dimensions");
}

// v and u for a given offset s.
Controls controls_at(const SimpleArs& ars, const GroupPoint& g, const OneForm& lambda, double s, AlgebraVector* f_out) {
  const AlgebraVector f = f_map_raw(ars.field(), g);
  Controls c;
  c.v = s + lambda * f;
  const auto& basis = ars.delta_basis();
  c.u.resize(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) c.u(static_cast<Eigen::Index>(j)) = lambda * basis[j];
  if (f_out) *f_out = f;
  return c;
}

double energy(const Controls& c) { return 0.5 * (c.v * c.v + c.u.squaredNorm()); }

struct Packing {
  int cd;  // chart coordinates
  int n;   // algebra dimension
  State pack(const GroupPoint& g, const OneForm& lambda, double tau) const {
    State y(cd + n + 1);
    y.head(cd) = g;
    y.segment(cd, n) = lambda.transpose();
    y(cd + n) = tau;
    return y;
  }
  ExtremalState unpack(const State& y) const { return {y.head(cd), y.segment(cd, n).transpose()}; }
  double tau(const State& y) const { return y(cd + n); }
};

State offset_rhs(const SimpleArs& ars, const Packing& pk, double s, const State& y) {
  const GroupPoint g = y.head(pk.cd);
  const OneForm lambda = y.segment(pk.cd, pk.n).transpose();
  AlgebraVector f;
  const Controls c = controls_at(ars, g, lambda, s, &f);
  AlgebraVector u_part = AlgebraVector::Zero(pk.n);
  for (std::size_t j = 0; j < ars.delta_basis().size(); ++j)
    u_part += c.u(static_cast<Eigen::Index>(j)) * ars.delta_basis()[j];
  const AlgebraVector w = c.v * f + u_part;
  State dy(y.size());
  dy.head(pk.cd) = ars.chart().left_jacobian(g) * w;
  dy.segment(pk.cd, pk.n) = (lambda * (ars.algebra().ad(u_part) - c.v * ars.d())).transpose();
  dy(pk.cd + pk.n) = c.v;
  return dy;
}

TrajectorySample make_sample(const SimpleArs& ars, const Packing& pk, double s, double t, const State& y) {
  TrajectorySample smp;
  smp.t = t;
  smp.state = pk.unpack(y);
  smp.controls = controls_at(ars, smp.state.g, smp.state.lambda, s, nullptr);
  smp.H = energy(smp.controls);
  smp.tau = pk.tau(y);
  return smp;
}

GeodesicTrajectory run(const SimpleArs& ars, const ExtremalState& s0, double s, double T, const IntegrateOptions& opt,
                       bool allow_richardson) {
  const GroupChart& chart = ars.chart();
  chart.validate(s0.g);
  if (s0.lambda.size() != ars.dim())
    throw ValidationError("covector has " + std::to_string(s0.lambda.size()) + " components, expected " +
                          std::to_string(ars.dim()));
  if (!(T >= 0.0) || !std::isfinite(T)) throw ValidationError("integration time must be finite and >= 0");
  if (!(opt.step > 0.0)) throw ValidationError("integration step must be positive");

  const Packing pk{chart.coord_dim(), ars.dim()};
  const Rhs rhs = [&](double, const State& y) { return offset_rhs(ars, pk, s, y); };
  auto advance = [&](const State& y, double t, double h) {
    State next = rk4_step(rhs, t, y, h);
    next.head(pk.cd) = chart.normalize(next.head(pk.cd));
    return next;
  };

  GeodesicTrajectory traj;
  traj.step = opt.step;
  traj.s = s;
  traj.initial = s0;
  State y = pk.pack(s0.g, s0.lambda, 0.0);
  traj.samples.push_back(make_sample(ars, pk, s, 0.0, y));
  const double h0 = traj.samples.front().H;

  std::vector<double> event_prev(opt.events.size());
  for (std::size_t e = 0; e < opt.events.size(); ++e) event_prev[e] = opt.events[e].fn(s0);

  const long steps = T == 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(T / opt.step - 1e-9)));
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * opt.step;
    const double t_next = (k + 1 == steps) ? T : static_cast<double>(k + 1) * opt.step;
    const double h = t_next - t;
    const State next = advance(y, t, h);
    if (!next.allFinite() || !chart.is_valid(next.head(pk.cd)))
      throw NumericFailure(chart.name() + ": trajectory left the chart domain", t_next);
    TrajectorySample smp = make_sample(ars, pk, s, t_next, next);
    const double drift = std::abs(smp.H - h0);
    traj.max_drift = std::max(traj.max_drift, drift);
    if (drift > opt.drift_bound)
      throw NumericFailure("energy drift " + format_number(drift) + " exceeds bound " + format_number(opt.drift_bound), t_next);

    bool stop = false;
    for (std::size_t e = 0; e < opt.events.size() && !stop; ++e) {
      const Event& ev = opt.events[e];
      const double prev = event_prev[e];
      const double cur = ev.fn(smp.state);
      event_prev[e] = cur;
      const bool crossed = (prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0);
      if (!crossed || t < ev.after) continue;
      double lo = 0.0, hi = h;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double val = ev.fn(pk.unpack(advance(y, t, mid)));
        if ((val < 0.0) == (prev < 0.0) && val != 0.0)
          lo = mid;
        else
          hi = mid;
      }
      const State at = advance(y, t, hi);
      EventHit hit{ev.name, t + hi, pk.unpack(at)};
      traj.events.push_back(hit);
      if (ev.terminal) {
        traj.samples.push_back(make_sample(ars, pk, s, t + hi, at));
        stop = true;
      }
    }
    if (stop) break;
    traj.samples.push_back(std::move(smp));
    y = next;
  }

  if (opt.richardson && allow_richardson && traj.events.empty()) {
    IntegrateOptions half;
    half.step = opt.step / 2;
    half.drift_bound = opt.drift_bound;
    const GeodesicTrajectory fine = run(ars, s0, s, T, half, false);
    const auto& a = traj.samples.back().state;
    const auto& b = fine.samples.back().state;
    traj.richardson_error = std::max((a.g - b.g).cwiseAbs().maxCoeff(), (a.lambda - b.lambda).cwiseAbs().maxCoeff());
  }
  return traj;
}

}  // namespace

OneForm chart_covector(const GroupChart& chart, const GroupPoint& g, const OneForm& lambda) {
  require_square(chart);
  const Matrix l = chart.left_jacobian(g);
  return l.transpose().partialPivLu().solve(lambda.transpose()).transpose();
}

OneForm lambda_from_chart(const GroupChart& chart, const GroupPoint& g, const OneForm& mu) {
  require_square(chart);
  return mu * chart.left_jacobian(g);
}

Controls normal_controls(const SimpleArs& ars, const ExtremalState& s) {
  ars.chart().validate(s.g);
  return controls_at(ars, s.g, s.lambda, 0.0, nullptr);
}

double maximized_hamiltonian(const SimpleArs& ars, const ExtremalState& s) { return energy(normal_controls(ars, s)); }

StateDerivative extremal_rhs(const SimpleArs& ars, const ExtremalState& s) {
  ars.chart().validate(s.g);
  const Packing pk{ars.chart().coord_dim(), ars.dim()};
  const State dy = offset_rhs(ars, pk, 0.0, pk.pack(s.g, s.lambda, 0.0));
  return {dy.head(pk.cd), dy.segment(pk.cd, pk.n).transpose()};
}

GeodesicTrajectory integrate(const SimpleArs& ars, const ExtremalState& s0, double T, const IntegrateOptions& opt) {
  return run(ars, s0, 0.0, T, opt, true);
}

GeodesicTrajectory integrate_offset(const SimpleArs& ars, const ExtremalState& s0, double s, double T,
                                    const IntegrateOptions& opt) {
  return run(ars, s0, s, T, opt, true);
}

ClosedFormGeodesic aff2_geodesic(int eps, double q, double y0) {
  if (eps != 1 && eps != -1) throw ValidationError("eps must be +1 or -1");
  if (!(q > 0.0)) throw ValidationError("q must be positive");
  ClosedFormGeodesic c;
  c.eps = eps;
  c.q = q;
  c.y0 = y0;
  c.r = eps / q;
  if (std::abs(q - 1.0) <= 1e-10) {
    c.kind = Aff2Case::one;
  } else if (q < 1.0) {
    c.kind = Aff2Case::below_one;
  } else {
    c.kind = Aff2Case::above_one;
    c.theta = std::atan(1.0 / std::sqrt(q * q - 1.0));
  }
  return c;
}

std::optional<FirstReturn> first_return(int eps, double q) {
  const ClosedFormGeodesic c = aff2_geodesic(eps, q);
  switch (c.kind) {
    case Aff2Case::below_one: {
      if (eps != 1) return std::nullopt;
      const double s = std::sqrt(1.0 - q * q);
      const double t = std::log((1.0 + s) / (1.0 - s)) / s;
      return FirstReturn{t, q * t + 2.0 / q - kPi};
    }
    case Aff2Case::one:
      if (eps != 1) return std::nullopt;
      return FirstReturn{2.0, 4.0 - kPi};
    case Aff2Case::above_one: {
      const double t = (kPi - 2.0 * eps * c.theta) / std::sqrt(q * q - 1.0);
      return FirstReturn{t, q * t + 2.0 * eps / q - kPi};
    }
  }
  return std::nullopt;
}

Aff2Point aff2_closed_form(int eps, double q, double t) {
  const ClosedFormGeodesic c = aff2_geodesic(eps, q);
  if (t < 0.0) throw ValidationError("closed form is defined for t >= 0");
  if (const auto ret = first_return(eps, q); ret && t >= ret->t)
    throw ValidationError("closed form is valid only before the first return time " + format_number(ret->t));
  double tau = 0.0;
  switch (c.kind) {
    case Aff2Case::below_one: {
      const double s = std::sqrt(1.0 - q * q);
      const double e = std::exp(s * t);
      tau = q * (e - 1.0) / (eps + s + (s - eps) * e);
      break;
    }
    case Aff2Case::one:
      tau = t / (2.0 - eps * t);
      break;
    case Aff2Case::above_one: {
      const double w = std::sqrt(q * q - 1.0);
      tau = (w / q) * std::tan(0.5 * t * w + eps * c.theta) - eps / q;
      break;
    }
  }
  Aff2Point p;
  p.tau = tau;
  p.alpha = 2.0 * std::atan(tau);
  const double d = 1.0 + tau * tau;
  p.x = 1.0 + (eps / q) * 2.0 * tau / d;
  p.dy = q * t + (eps / q) * 2.0 * tau * tau / d - 2.0 * std::atan(tau);
  return p;
}

NumericReturn numeric_first_return(int eps, double q, double t_max, double step) {
  aff2_geodesic(eps, q);
  auto chart = make_chart("aff2");
  const LieAlgebra& alg = chart->algebra();
  const SimpleArs ars = build_ars(chart, inner_derivation(alg, alg.basis_vector(1)), {alg.basis_vector(0)});
  GroupPoint g0(2);
  g0 << 1.0, 0.0;
  OneForm mu(2);
  mu << eps, q;
  IntegrateOptions opt;
  opt.step = step;
  opt.events.push_back({"x=1", [](const ExtremalState& s) { return s.g(0) - 1.0; }, 0.0, true});
  NumericReturn out;
  out.trajectory = integrate(ars, {g0, lambda_from_chart(*chart, g0, mu)}, t_max, opt);
  if (!out.trajectory.events.empty()) {
    const EventHit& hit = out.trajectory.events.front();
    out.hit = FirstReturn{hit.t, hit.state.g(1) - g0(1)};
  }
  return out;
}

std::vector<WavefrontRay> wavefront_covectors(const SimpleArs& ars, const GroupPoint& g0, int count) {
  const int n = ars.dim();
  if (count < 4) throw ValidationError("wavefront needs at least 4 rays");
  if (n != 2 && n != 3) throw ValidationError("wavefront sampling supports 2- and 3-dimensional groups");
  ars.chart().validate(g0);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<WavefrontRay> rays(count);
  const AlgebraVector f = f_map(ars.field(), g0);

  if (!in_locus(ars, g0)) {
    Matrix m(n, n);
    m.col(0) = f;
    for (int j = 0; j < n - 1; ++j) m.col(j + 1) = ars.delta_basis()[j];
    const Matrix m_inv = m.inverse();
    for (int k = 0; k < count; ++k) {
      OneForm xi(n);
      WavefrontRay& r = rays[k];
      r.index = k;
      if (n == 2) {
        const double phi = 2.0 * kPi * k / count;
        xi << std::cos(phi), std::sin(phi);
        r.angles = {phi};
      } else {
        const double z = 1.0 - (2.0 * k + 1.0) / count;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double az = std::fmod(golden * k, 2.0 * kPi);
        xi << rho * std::cos(az), rho * std::sin(az), z;
        r.angles = {std::acos(z), az};
      }
      r.lambda0 = xi * m_inv;
    }
    return rays;
  }

  // On the locus F(g0) lies in Delta and H only sees the Delta-part of lambda.
  Matrix b(n, n);
  for (int j = 0; j < n - 1; ++j) b.col(j) = ars.delta_basis()[j];
  b.col(n - 1) = ars.y_n();
  const Matrix b_inv = b.inverse();
  const Eigen::VectorXd fc = (b_inv * f).head(n - 1);
  const Matrix form = Matrix::Identity(n - 1, n - 1) + fc * fc.transpose();
  const Matrix s = Eigen::SelfAdjointEigenSolver<Matrix>(form).operatorInverseSqrt();
  auto make = [&](int k, const Eigen::VectorXd& w, double phi, std::vector<double> angles) {
    OneForm coeffs(n);
    coeffs.head(n - 1) = (s * w).transpose();
    coeffs(n - 1) = std::tan(phi);
    WavefrontRay& r = rays[k];
    r.index = k;
    r.angles = std::move(angles);
    r.lambda0 = coeffs * b_inv;
  };
  if (n == 2) {
    const int m_plus = (count + 1) / 2;
    const int m_minus = count / 2;
    for (int k = 0; k < count; ++k) {
      const int eps = k < m_plus ? 1 : -1;
      const int l = k < m_plus ? k : k - m_plus;
      const int m = k < m_plus ? m_plus : m_minus;
      const double phi = -0.5 * kPi + kPi * (l + 0.5) / m;
      Eigen::VectorXd w(1);
      w << eps;
      make(k, w, phi, {static_cast<double>(eps), phi});
    }
  } else {
    for (int k = 0; k < count; ++k) {
      const double theta = std::fmod(golden * k, 2.0 * kPi);
      const double phi = -0.5 * kPi + kPi * (k + 0.5) / count;
      Eigen::VectorXd w(2);
      w << std::cos(theta), std::sin(theta);
      make(k, w, phi, {theta, phi});
    }
  }
  return rays;
}

namespace {

void shoot(const SimpleArs& ars, const GroupPoint& g0, double T, double step, WavefrontRay& r) {
  try {
    IntegrateOptions opt;
    opt.step = step;
    r.endpoint = integrate(ars, {g0, r.lambda0}, T, opt).samples.back().state.g;
    r.ok = true;
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.what();
    r.endpoint = GroupPoint::Constant(g0.size(), std::nan(""));
  }
}

}  // namespace

std::vector<WavefrontRay> wavefront(const SimpleArs& ars, const GroupPoint& g0, double T, int count, double step) {
  std::vector<WavefrontRay> rays = wavefront_covectors(ars, g0, count);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) shoot(ars, g0, T, step, rays[k]);
  return rays;
}

std::vector<WavefrontRay> wavefront_serial(const SimpleArs& ars, const GroupPoint& g0, double T, int count,
                                           double step) {
  std::vector<WavefrontRay> rays = wavefront_covectors(ars, g0, count);
  for (int k = 0; k < count; ++k) shoot(ars, g0, T, step, rays[k]);
  return rays;
}

AbnormalDescription abnormal_description(const SimpleArs& ars, const GroupPoint& g0) {
  ars.chart().validate(g0);
  if (!in_locus(ars, g0)) throw ValidationError("abnormal extremals start on the singular locus; psi(g0) != 0");
  AbnormalDescription d;
  d.algebra = abnormal_algebra(ars);
  d.base = g0;
  const auto& labels = ars.algebra().labels();
  if (d.algebra.is_zero()) {
    d.statement = "the abnormal subalgebra is {0}: abnormal extremals through g0 are constant";
  } else {
    d.statement = "abnormal curves through g0 are the absolutely continuous curves in the coset g0 A, A generated by " +
                  d.algebra.describe(labels) + "; lambda = p omega with p' = <omega, ad(g') " +
                  describe_vector(ars.y_n(), labels) + "> p";
  }
  return d;
}

double abnormal_coefficient(const SimpleArs& ars, const AlgebraVector& gdot) {
  return ars.omega() * ars.algebra().bracket(gdot, ars.y_n());
}

std::vector<AbnormalSample> abnormal_curve(const SimpleArs& ars, const GroupPoint& g0, const AlgebraVector& direction,
                                           double T, int samples) {
  const AbnormalDescription d = abnormal_description(ars, g0);
  if (direction.size() != ars.dim() || !d.algebra.contains(direction))
    throw ValidationError("direction " + describe_vector(direction, ars.algebra().labels()) +
                          " is not in the abnormal subalgebra " + d.algebra.describe(ars.algebra().labels()));
  if (samples < 1) throw ValidationError("abnormal curve needs at least one interval");
  const double c = abnormal_coefficient(ars, direction);
  std::vector<AbnormalSample> out;
  for (int k = 0; k <= samples; ++k) {
    const double t = T * k / samples;
    out.push_back({t, ars.chart().multiply(g0, ars.chart().exp_map(t * direction)), std::exp(c * t)});
  }
  return out;
}

PendulumReport heisenberg_pendulum(const SimpleArs& ars, const GroupPoint& g0, const OneForm& mu0, double T,
                                   double step) {
  Matrix d_expected = Matrix::Zero(3, 3);
  d_expected(1, 0) = 1.0;
  const Subspace delta = Subspace::span(3, {AlgebraVector::Unit(3, 0), AlgebraVector::Unit(3, 2)});
  if (ars.chart().name() != "heisenberg" || ars.d() != d_expected || !(ars.delta() == delta))
    throw ValidationError("pendulum reduction needs the Heisenberg structure {X, Z} with D X = Y");
  if (!in_locus(ars, g0)) throw ValidationError("pendulum reduction starts on the singular locus {x = 0}");
  const double c = mu0(0), q = mu0(1), r = mu0(2);
  if (!(c * c > 0.0)) throw ValidationError("pendulum reduction needs c^2 = 2H - r^2 > 0");

  IntegrateOptions opt;
  opt.step = step;
  const GeodesicTrajectory full = integrate(ars, {g0, lambda_from_chart(ars.chart(), g0, mu0)}, T, opt);
  PendulumReport rep;
  rep.c = c;

  // Reduced system (alpha, alpha') on the same time grid.
  const Rhs pend = [&](double, const State& y) {
    State dy(2);
    dy << y(1), c * r * std::cos(y(0));
    return dy;
  };
  State y(2);
  y << 0.0, q;
  double prev_full = 0.0;
  for (std::size_t k = 0; k < full.samples.size(); ++k) {
    const TrajectorySample& smp = full.samples[k];
    if (k > 0) y = rk4_step(pend, full.samples[k - 1].t, y, smp.t - full.samples[k - 1].t);
    const OneForm mu = chart_covector(ars.chart(), smp.state.g, smp.state.lambda);
    const double x = smp.state.g(0);
    const double p = mu(0);
    const double v = mu(1) * x + 0.5 * mu(2) * x * x;
    double a_full = std::atan2(v / c, p / c);
    if (k > 0) a_full += 2.0 * kPi * std::round((prev_full - a_full) / (2.0 * kPi));
    prev_full = a_full;
    rep.t.push_back(smp.t);
    rep.alpha.push_back(y(0));
    rep.alpha_full.push_back(a_full);
    rep.max_p_deviation = std::max(rep.max_p_deviation, std::abs(p - c * std::cos(y(0))));
    rep.max_v_deviation = std::max(rep.max_v_deviation, std::abs(v - c * std::sin(y(0))));
    rep.max_alpha_deviation = std::max(rep.max_alpha_deviation, std::abs(y(0) - a_full));
  }
  for (std::size_t k = 1; k + 1 < rep.t.size(); ++k) {
    const double h1 = rep.t[k] - rep.t[k - 1], h2 = rep.t[k + 1] - rep.t[k];
    if (std::abs(h1 - h2) > 1e-12) continue;
    const double acc = (rep.alpha_full[k + 1] - 2.0 * rep.alpha_full[k] + rep.alpha_full[k - 1]) / (h1 * h1);
    rep.max_pendulum_residual =
        std::max(rep.max_pendulum_residual, std::abs(acc - c * r * std::cos(rep.alpha_full[k])));
  }
  return rep;
}

}  // namespace arslie
