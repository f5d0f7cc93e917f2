#pragma once

#include "arslie/extremals.hpp"

#include <vector>

namespace arslie {

/// Left-invariant sub-Riemannian structure on G x R with the twisted product
/// (g1, t1)(g2, t2) = (phi_t2(g1) g2, t1 + t2), phi the flow of the linear
/// field. Its algebra is g plus one generator Xt with [Y, Xt] = D Y, and the
/// distribution span{Xt, Y_1..Y_{n-1}} has full rank everywhere.
struct LiftedStructure {
  SimpleArs base;
  LieAlgebra algebra;  // dimension n + 1, Xt last
  Subspace distribution;
  std::vector<AlgebraVector> frame;  // Y_1..Y_{n-1}, Xt in lifted coordinates
};

/// Throws InvariantViolation if the lifted distribution does not generate the
/// lifted algebra.
LiftedStructure lift(const SimpleArs& ars);

/// Lifted chart point: chart coordinates of g followed by tau.
using LiftedPoint = Eigen::VectorXd;

LiftedPoint lifted_multiply(const LiftedStructure& lift, const LiftedPoint& a, const LiftedPoint& b,
                            double step = 1e-3);
/// Chart tangents of the orthonormal frame at p: columns (L(g) Y_j, 0), then
/// (X(g), 1).
Matrix lifted_frame(const LiftedStructure& lift, const LiftedPoint& p);

/// Covector on the lifted algebra, dual basis (e_1..e_n, Xt).
struct LiftedState {
  LiftedPoint p;
  OneForm lambda;
};

/// Builds the lifted state over (g, tau) from a base covector and the
/// component s conjugate to tau: the Xt-component is s + <lambda, F(g)>.
LiftedState lifted_state(const LiftedStructure& lift, const GroupPoint& g, double tau, const OneForm& lambda, double s);
/// s = lambda(Xt) - <lambda|g, F(g)>, constant along lifted extremals.
double conjugate_s(const LiftedStructure& lift, const LiftedState& st);
double lifted_hamiltonian(const LiftedStructure& lift, const LiftedState& st);

struct LiftedDerivative {
  Eigen::VectorXd p_dot;
  OneForm lambda_dot;
};
/// p' = sum u_j (L Y_j, 0) + v (X(g), 1), lambda' = lambda ad(W) in the lifted
/// algebra, W = sum u_j Y_j + v Xt.
LiftedDerivative lifted_rhs(const LiftedStructure& lift, const LiftedState& st);

struct LiftedSample {
  double t = 0.0;
  LiftedState state;
  double v = 0.0;
  Eigen::VectorXd u;
  double H = 0.0;
  double s = 0.0;
};

struct LiftedTrajectory {
  std::vector<LiftedSample> samples;
  double step = 0.0;
  double max_drift = 0.0;
  double max_s_drift = 0.0;
};

/// Fixed-step RK4 on the lifted structure with the contract of integrate():
/// last step lands on T, NumericFailure on energy drift or chart exit.
LiftedTrajectory lifted_integrate(const LiftedStructure& lift, const LiftedState& s0, double T,
                                  const IntegrateOptions& opt = {});

struct ProjectedSample {
  double t = 0.0;
  GroupPoint g;
  double v = 0.0;
  Eigen::VectorXd u;
};

struct Projection {
  std::vector<ProjectedSample> samples;
  double tau_increment = 0.0;
  double tau_quadrature = 0.0;
  double lifted_length = 0.0;
  double projected_length = 0.0;
  bool touches_locus = false;
};

/// Drops tau and s. Checks tau(T) - tau(0) against the quadrature of v
/// (<= 1e-8) and that the base length does not exceed the lifted one, with
/// equality (<= 1e-10) when no sample lies on the singular locus. Throws
/// InvariantViolation otherwise.
Projection project(const LiftedStructure& lift, const LiftedTrajectory& traj);

/// Integral of sampled values over sampled times, piecewise cubic through four
/// neighbouring samples with two Gauss points per interval.
double sample_quadrature(const std::vector<double>& t, const std::vector<double>& f);

}  // namespace arslie
