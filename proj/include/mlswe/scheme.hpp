#pragma once

#include <stdexcept>
#include <vector>

#include "mlswe/mesh.hpp"
#include "mlswe/physics.hpp"
#include "mlswe/reconstruction.hpp"

namespace mlswe {

struct SchemeParams {
  double gamma = 0.5;   // mass flux stabilization, >= 0
  double alpha = 0.5;   // potential stabilization, >= 0
  double tau_cfl = 0.5;
  int order_space = 1;  // 1 or 2
  int order_time = 1;   // 1 (forward Euler) or 2 (Heun / H-CN(2,2,2))
  bool limiter_eta = false;     // Barth limiter on the reconstructed surfaces
  double slope_cap_r = 0.0;     // 0 disables; otherwise r in (1/2, 1)
  double slope_cap_coeff = 1.0;
};

void validate(const SchemeParams& p);

struct PositivityError : std::runtime_error {
  int cell, layer;
  double value;
  PositivityError(int cell_, int layer_, double value_)
      : std::runtime_error("negative layer mass after update"),
        cell(cell_),
        layer(layer_),
        value(value_) {}
};

/// One side of an edge: effective mass, velocity and potential trace.
struct EdgeSide {
  double H;
  Vec2 u;
  double phi;
};

struct EdgeEval {
  double flux_n;    // F_e . n_{e,K}
  double phi_star;  // corrected potential, single-valued on the edge
  double pi_n;      // Pi_e . n_{e,K}
  double lambda;    // Lambda_e
};

/// Stabilized mass flux and corrected potential for one edge and one layer,
///   F    = mean(Hu) - gamma dt (H/Delta)_e dPhi / eps^2
///   Phi* = mean(Phi) - alpha dt (C_H/Delta_e) d(Hu)
/// where (H/Delta)_e = (H_K mu_K + H_Ke mu_Ke)/2 with mu = m_dK/(2 m_K).
inline EdgeEval edge_flux(const EdgeSide& left, const EdgeSide& right, const Vec2& n,
                          double mu_left, double mu_right, double inv_delta, double c_hess,
                          double gamma, double alpha, double dt, double eps) {
  const double inv_eps2 = 1.0 / (eps * eps);
  const double hu_left = left.H * left.u.dot(n);
  const double hu_right = right.H * right.u.dot(n);
  const double dphi = 0.5 * (right.phi - left.phi);
  const double hd_mu = 0.5 * (left.H * mu_left + right.H * mu_right);
  EdgeEval ev;
  ev.pi_n = gamma * dt * hd_mu * dphi * inv_eps2;
  ev.flux_n = 0.5 * (hu_left + hu_right) - ev.pi_n;
  ev.lambda = alpha * dt * c_hess * inv_delta * 0.5 * (hu_right - hu_left);
  ev.phi_star = 0.5 * (left.phi + right.phi) - ev.lambda;
  return ev;
}

/// Mirror (slip) or zero-gradient (outflow) ghost of an interior trace.
inline EdgeSide ghost_side(const EdgeSide& inner, const Vec2& n, BoundaryKind bc) {
  EdgeSide g = inner;
  if (bc == BoundaryKind::slip_wall) g.u = inner.u - 2.0 * inner.u.dot(n) * n;
  return g;
}

/// Vector mass flux F_{e,i} for one edge/layer (spec operation; the step uses
/// the scalar normal component from edge_flux).
Vec2 mass_flux(const EdgeSide& left, const EdgeSide& right, const Vec2& n, double mu_left,
               double mu_right, const SchemeParams& p, double dt, double eps);

double corrected_potential(const EdgeSide& left, const EdgeSide& right, const Vec2& n,
                           double inv_delta, double c_hess, const SchemeParams& p, double dt,
                           double eps);

struct StepWorkspace {
  std::vector<Eigen::ArrayXd> height;    // per layer, per cell
  std::vector<Eigen::ArrayXd> phi;       // per layer, per cell
  std::vector<Eigen::ArrayXd> flux_n;    // per layer, per edge
  std::vector<Eigen::ArrayXd> phi_star;  // per layer, per edge
  TraceSet traces;
  GradientWorkspace gradients;
};

/// One forward-Euler step of the space scheme at params.order_space.
/// Two-phase: edge quantities from the read-only state, then per-cell
/// accumulation in mesh order (bitwise reproducible across thread counts).
/// Throws PositivityError if a layer mass goes negative.
void step_euler(const State& state, const Mesh& mesh, const LayerStack& stack,
                const HessianInfo& hess, const SchemeParams& params, double dt, State& out,
                StepWorkspace& ws);

/// First-order explicit update (spec operation); equivalent to step_euler
/// with order_space = 1.
State step_first_order(const State& state, const Mesh& mesh, const SchemeParams& params,
                       const LayerStack& stack, double dt);

}  // namespace mlswe
