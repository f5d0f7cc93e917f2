#pragma once

#include "arslie/ars.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace arslie {

/// A point of the cotangent bundle, left-trivialized: group point plus a
/// covector lambda in g* (dual basis of the algebra basis).
struct ExtremalState {
  GroupPoint g;
  OneForm lambda;
};

struct Controls {
  double v = 0.0;
  Eigen::VectorXd u;
};

/// Chart covector mu = lambda L(g)^-1 (square charts only), i.e. the
/// components (p, q, ...) conjugate to the chart coordinates.
OneForm chart_covector(const GroupChart& chart, const GroupPoint& g, const OneForm& lambda);
OneForm lambda_from_chart(const GroupChart& chart, const GroupPoint& g, const OneForm& mu);

/// v = <lambda, F(g)>, u_j = <lambda, Y_j>.
Controls normal_controls(const SimpleArs& ars, const ExtremalState& s);
/// H = (v^2 + sum u_j^2) / 2.
double maximized_hamiltonian(const SimpleArs& ars, const ExtremalState& s);

struct StateDerivative {
  Eigen::VectorXd g_dot;  // chart tangent
  OneForm lambda_dot;
};
/// g' = L(g) W with W = v F(g) + sum u_j Y_j; lambda' = lambda (ad(sum u_j Y_j) - v D).
StateDerivative extremal_rhs(const SimpleArs& ars, const ExtremalState& s);

struct Event {
  std::string name;
  std::function<double(const ExtremalState&)> fn;
  /// Sign changes are only reported for crossings after this time.
  double after = 0.0;
  bool terminal = true;
};

struct EventHit {
  std::string name;
  double t = 0.0;
  ExtremalState state;
};

struct IntegrateOptions {
  double step = 1e-3;
  double drift_bound = 1e-8;
  std::vector<Event> events;
  /// Also integrate with step/2 and report the endpoint difference.
  bool richardson = false;
};

struct TrajectorySample {
  double t = 0.0;
  ExtremalState state;
  Controls controls;
  double H = 0.0;
  /// Integral of v from 0 to t (the extra coordinate of the desingularized lift).
  double tau = 0.0;
};

struct GeodesicTrajectory {
  std::vector<TrajectorySample> samples;
  double step = 0.0;
  /// Constant offset added to v; 0 for the ARS itself, the covector
  /// component s for a lifted extremal.
  double s = 0.0;
  ExtremalState initial;
  double max_drift = 0.0;
  std::optional<double> richardson_error;
  std::vector<EventHit> events;
};

/// Fixed-step RK4 integration of the normal extremal system on [0, T]. The last
/// step is shortened to land on T; T = 0 yields the single initial sample.
/// Throws NumericFailure if the energy drift exceeds drift_bound or the
/// trajectory leaves the chart.
GeodesicTrajectory integrate(const SimpleArs& ars, const ExtremalState& s0, double T, const IntegrateOptions& opt = {});

/// Same system with v = s + <lambda, F(g)>; this is the lifted extremal system
/// of the desingularization, with tau' = v and s constant.
GeodesicTrajectory integrate_offset(const SimpleArs& ars, const ExtremalState& s0, double s, double T,
                                    const IntegrateOptions& opt = {});

// Closed-form geodesics on Aff+(2) for the structure {X, inner field of Y},
// starting at (1, y0) with chart covector (p, q) = (eps, q).

enum class Aff2Case { below_one, one, above_one };

struct ClosedFormGeodesic {
  int eps = 1;
  double q = 1.0;
  Aff2Case kind = Aff2Case::one;
  double r = 1.0;      // eps / q
  double theta = 0.0;  // arctan(1 / sqrt(q^2 - 1)), q > 1 only
  double y0 = 0.0;
};

/// Throws ValidationError unless q > 0 and eps = +-1. |q - 1| <= 1e-10 is
/// treated as q = 1.
ClosedFormGeodesic aff2_geodesic(int eps, double q, double y0 = 0.0);

struct Aff2Point {
  double x = 1.0;
  double dy = 0.0;  // y - y0
  double tau = 0.0;
  double alpha = 0.0;
};
/// Valid on [0, t*) where t* is the first return time (or all t >= 0 when
/// there is none).
Aff2Point aff2_closed_form(int eps, double q, double t);

struct FirstReturn {
  double t = 0.0;
  double dy = 0.0;
};
/// Limit time and y-displacement of the first return to {x = 1}, if any.
std::optional<FirstReturn> first_return(int eps, double q);

struct NumericReturn {
  std::optional<FirstReturn> hit;
  GeodesicTrajectory trajectory;
};
/// Integrates the Aff+(2) example from (1, 0) with chart covector (eps, q) and
/// locates the first crossing of x = 1 after t > 0 by bisection.
NumericReturn numeric_first_return(int eps, double q, double t_max, double step = 1e-3);

struct WavefrontRay {
  int index = 0;
  std::vector<double> angles;
  OneForm lambda0;
  GroupPoint endpoint;
  bool ok = true;
  std::string error;
};

/// Initial covectors on {H = 1/2} at g0. Off the locus the frame
/// {F(g0), Y_j} is a basis and the unit sphere of its dual is swept by angles;
/// on the locus the Delta-part of lambda lies on the reduced ellipse and the
/// omega-component is tan(phi) with phi uniform in (-pi/2, pi/2).
std::vector<WavefrontRay> wavefront_covectors(const SimpleArs& ars, const GroupPoint& g0, int count);
/// Integrates every ray to time T (OpenMP across rays, merged in ray order).
/// Integrator failures are recorded per ray.
std::vector<WavefrontRay> wavefront(const SimpleArs& ars, const GroupPoint& g0, double T, int count, double step = 1e-3);
/// Single-threaded reference for wavefront; identical output.
std::vector<WavefrontRay> wavefront_serial(const SimpleArs& ars, const GroupPoint& g0, double T, int count,
                                           double step = 1e-3);

struct AbnormalDescription {
  Subspace algebra;
  GroupPoint base;
  std::string statement;
};
/// Throws ValidationError if g0 is not in the singular locus.
AbnormalDescription abnormal_description(const SimpleArs& ars, const GroupPoint& g0);
/// c = <omega, ad(gdot) Y_n>, the growth rate of p in lambda = p omega.
double abnormal_coefficient(const SimpleArs& ars, const AlgebraVector& gdot);

struct AbnormalSample {
  double t = 0.0;
  GroupPoint g;
  double p = 1.0;
};
/// The abnormal curve t -> g0 exp(t Y), Y in the abnormal subalgebra, with
/// p(t) = exp(c t), sampled at `samples` + 1 equally spaced times.
std::vector<AbnormalSample> abnormal_curve(const SimpleArs& ars, const GroupPoint& g0, const AlgebraVector& direction,
                                           double T, int samples);

struct PendulumReport {
  double c = 0.0;  // p0
  std::vector<double> t;
  std::vector<double> alpha;          // reduced integrator
  std::vector<double> alpha_full;     // reconstructed from the full system
  double max_p_deviation = 0.0;       // |p - c cos(alpha)|
  double max_v_deviation = 0.0;       // |q x + r x^2 / 2 - c sin(alpha)|
  double max_alpha_deviation = 0.0;   // |alpha - alpha_full|
  double max_pendulum_residual = 0.0; // |alpha_full'' - c r cos(alpha_full)|, finite differences
};
/// Pendulum reduction for the Heisenberg structure {X, Z, field of D = E_21}:
/// alpha'' = p0 r cos(alpha), alpha(0) = 0, alpha'(0) = q. The initial point
/// must lie on {x = 0}; mu0 = (p0, q, r) is the chart covector.
PendulumReport heisenberg_pendulum(const SimpleArs& ars, const GroupPoint& g0, const OneForm& mu0, double T,
                                   double step = 1e-3);

}  // namespace arslie
