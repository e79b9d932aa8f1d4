#pragma once

#include <cmath>
#include <utility>

#include "mlswe/mesh.hpp"
#include "mlswe/physics.hpp"
#include "mlswe/scheme.hpp"

namespace mlswe {

/// Beta-plane Coriolis parameter f(y) = f0 + beta (y - y_ref), evaluated at
/// cell centroids.
struct CoriolisParams {
  double f0 = 0.0;
  double beta = 0.0;
  double reference_y = 0.0;

  bool active() const { return f0 != 0.0 || beta != 0.0; }
  double f_at(double y) const { return f0 + beta * (y - reference_y); }
};

Eigen::ArrayXd coriolis_field(const CoriolisParams& c, const Mesh& mesh);

/// CFL-like adaptive step calibrated on the barotropic gravity wave,
///   dt = tau min_K 2 m_K / (m_dK (|u_bar| + sqrt(g h_bar)/eps)),
/// with h_bar the total depth and u_bar the depth-averaged velocity.
double adaptive_dt(const State& state, const Mesh& mesh, const SchemeParams& params,
                   const LayerStack& stack);

/// Explicit Godunov-type CFL bound: dt such that
/// (|u_e.n| + c_e/eps) dt max(m_e/m_K, m_e/m_Ke) <= tau for every edge, with
/// the gravity speed bounded by c_e = sqrt(C_H max H) >= the largest
/// eigenvalue speed of H_i Hess_ij.
double cfl1_dt(const State& state, const Mesh& mesh, const LayerStack& stack,
               const HessianInfo& hess, double tau);

/// Exact rotation by the angle f dt (clockwise for f > 0).
inline std::pair<double, double> coriolis_exact(double u, double v, double f, double dt) {
  const double c = std::cos(f * dt), s = std::sin(f * dt);
  return {c * u + s * v, c * v - s * u};
}

/// Crank-Nicolson rotation, u' = u + (f dt/2)(v + v'), v' = v - (f dt/2)(u + u');
/// the closed-form solve is a Cayley map, so the speed is preserved exactly.
inline std::pair<double, double> coriolis_cn(double u, double v, double f, double dt) {
  const double a = 0.5 * f * dt;
  if (a == 0.0) return {u, v};
  const double bu = u + a * v, bv = v - a * u;
  const double det = 1.0 + a * a;
  return {(bu + a * bv) / det, (bv - a * bu) / det};
}

// State arithmetic used by the integrators; combinations act on the
// conservative variables (H, Hu, Hv), velocities are recovered afterwards.
State half_sum(const State& a, const State& b);
inline double half_sum(double a, double b) { return 0.5 * (a + b); }

/// Two-stage Heun: U1 = U + dt L(U), U2 = U1 + dt L(U1), result (U + U2)/2.
/// `op(state, dt)` must apply one forward-Euler step of the spatial operator.
template <class StateT, class Op>
StateT heun_step(const StateT& state, double dt, Op&& op) {
  StateT u1 = op(state, dt);
  StateT u2 = op(u1, dt);
  return half_sum(state, u2);
}

/// Crank-Nicolson Coriolis stage of H-CN(2,2,2): per cell,
/// U2 = U1 + (dt/2) C(U_n) + (dt/2) C(U2) with C(U) = (0, f Hv, -f Hu),
/// solved in closed form on the momenta. Cells with f = 0 pass through
/// bit-for-bit.
void coriolis_cn_stage(const State& base, const State& at_n, const Eigen::ArrayXd& f, double dt,
                       State& out);

/// Second-order IMEX H-CN(2,2,2):
///   U1 = Un + dt L(Un), U2 = CN stage, U3 = U2 + dt L(U2),
///   U^{n+1} = (Un - U1 + U2 + U3)/2.
/// With f identically zero this reproduces heun_step bitwise.
State hcn_combine(const State& at_n, const State& u1, const State& u2, const State& u3);

template <class Op>
State imex_hcn222_step(const State& state, double dt, Op&& op, const Eigen::ArrayXd& f) {
  State u1 = op(state, dt);
  State u2;
  coriolis_cn_stage(u1, state, f, dt, u2);
  State u3 = op(u2, dt);
  return hcn_combine(state, u1, u2, u3);
}

}  // namespace mlswe
