#include "mlswe/scheme.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mlswe {

void validate(const SchemeParams& p) {
  if (p.gamma < 0.0 || p.alpha < 0.0)
    throw std::invalid_argument("scheme: gamma and alpha must be >= 0");
  if (!(p.tau_cfl > 0.0)) throw std::invalid_argument("scheme: tau_cfl must be > 0");
  if (p.order_space != 1 && p.order_space != 2)
    throw std::invalid_argument("scheme: order_space must be 1 or 2");
  if (p.order_time != 1 && p.order_time != 2)
    throw std::invalid_argument("scheme: order_time must be 1 or 2");
  if (p.slope_cap_r > 0.0 && (p.slope_cap_r <= 0.5 || p.slope_cap_r > 1.0))
    throw std::invalid_argument("scheme: slope_cap_r must lie in (1/2, 1]");
}

Vec2 mass_flux(const EdgeSide& left, const EdgeSide& right, const Vec2& n, double mu_left,
               double mu_right, const SchemeParams& p, double dt, double eps) {
  const Vec2 mean_hu = 0.5 * (left.H * left.u + right.H * right.u);
  const double hd_mu = 0.5 * (left.H * mu_left + right.H * mu_right);
  const Vec2 dphi = 0.5 * (right.phi - left.phi) * n;
  return mean_hu - p.gamma * dt * hd_mu * dphi / (eps * eps);
}

double corrected_potential(const EdgeSide& left, const EdgeSide& right, const Vec2& n,
                           double inv_delta, double c_hess, const SchemeParams& p, double dt,
                           double eps) {
  (void)eps;
  const double d_hu = 0.5 * (right.H * right.u - left.H * left.u).dot(n);
  return 0.5 * (left.phi + right.phi) - p.alpha * dt * c_hess * inv_delta * d_hu;
}

namespace {

void resize_layers(std::vector<Eigen::ArrayXd>& v, int layers, int n) {
  v.resize(layers);
  for (auto& a : v) a.resize(n);
}

}  // namespace

void step_euler(const State& state, const Mesh& mesh, const LayerStack& stack,
                const HessianInfo& hess, const SchemeParams& params, double dt, State& out,
                StepWorkspace& ws) {
  const int L = stack.num_layers();
  const int nc = mesh.num_cells();
  const int ne = mesh.num_edges();
  const double eps = stack.epsilon;
  const double inv_eps2 = 1.0 / (eps * eps);
  const bool second = params.order_space == 2;

  resize_layers(ws.flux_n, L, ne);
  resize_layers(ws.phi_star, L, ne);

  if (second) {
    compute_traces(state, mesh, stack, params.limiter_eta, params.slope_cap_r,
                   params.slope_cap_coeff, ws.traces, ws.gradients);
  } else {
    resize_layers(ws.phi, L, nc);
    for (int i = 0; i < L; ++i) potential_layer(stack, state, i, ws.phi[i]);
  }

  // phase 1: one evaluation per edge, shared by both adjacent cells
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = mesh.edges[e];
    const int K = ed.left;
    const double mu_l = mesh.cell_mu[K];
    const double mu_r = ed.is_boundary() ? mu_l : mesh.cell_mu[ed.right];
    for (int i = 0; i < L; ++i) {
      EdgeSide l, r;
      if (second) {
        l = {ws.traces.H_left[i][e], Vec2(ws.traces.ux_left[i][e], ws.traces.uy_left[i][e]),
             ws.traces.phi_left[i][e]};
        r = {ws.traces.H_right[i][e], Vec2(ws.traces.ux_right[i][e], ws.traces.uy_right[i][e]),
             ws.traces.phi_right[i][e]};
      } else {
        l = {state.H[i][K], Vec2(state.ux[i][K], state.uy[i][K]), ws.phi[i][K]};
        r = ed.is_boundary()
                ? ghost_side(l, ed.normal, ed.bc)
                : EdgeSide{state.H[i][ed.right], Vec2(state.ux[i][ed.right], state.uy[i][ed.right]),
                           ws.phi[i][ed.right]};
      }
      const EdgeEval ev = edge_flux(l, r, ed.normal, mu_l, mu_r, mesh.inv_delta_e[e],
                                    hess.spectral_norm, params.gamma, params.alpha, dt, eps);
      ws.flux_n[i][e] = ev.flux_n;
      ws.phi_star[i][e] = ev.phi_star;
    }
  }

  out.z_b = state.z_b;
  resize_layers(out.H, L, nc);
  resize_layers(out.ux, L, nc);
  resize_layers(out.uy, L, nc);

  // phase 2: per-cell accumulation over its own edges in fixed mesh order
  int bad_cell = -1, bad_layer = -1;
  double bad_value = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int k = 0; k < nc; ++k) {
    for (int i = 0; i < L; ++i) {
      double dH = 0.0;
      double dmx = 0.0, dmy = 0.0;
      for (const auto& [e, s] : mesh.cell_edges[k]) {
        const Edge& ed = mesh.edges[e];
        const double fn = s * ws.flux_n[i][e];
        const double fp = std::max(fn, 0.0);
        const double fm = std::min(fn, 0.0);

        double ux_in, uy_in, ux_out, uy_out;
        if (second) {
          const bool k_is_left = s > 0.0;
          ux_out = k_is_left ? ws.traces.ux_left[i][e] : ws.traces.ux_right[i][e];
          uy_out = k_is_left ? ws.traces.uy_left[i][e] : ws.traces.uy_right[i][e];
          ux_in = k_is_left ? ws.traces.ux_right[i][e] : ws.traces.ux_left[i][e];
          uy_in = k_is_left ? ws.traces.uy_right[i][e] : ws.traces.uy_left[i][e];
        } else {
          ux_out = state.ux[i][k];
          uy_out = state.uy[i][k];
          const int other = ed.is_boundary() ? -1 : (s > 0.0 ? ed.right : ed.left);
          if (other >= 0) {
            ux_in = state.ux[i][other];
            uy_in = state.uy[i][other];
          } else {
            Vec2 ug = ghost_side({0.0, Vec2(ux_out, uy_out), 0.0}, ed.normal, ed.bc).u;
            ux_in = ug.x();
            uy_in = ug.y();
          }
        }

        dH += fn * ed.length;
        dmx += (ux_out * fp + ux_in * fm) * ed.length;
        dmy += (uy_out * fp + uy_in * fm) * ed.length;
        const double force = ws.phi_star[i][e] * inv_eps2 * s * ed.length;
        dmx += state.H[i][k] * force * ed.normal.x();
        dmy += state.H[i][k] * force * ed.normal.y();
      }
      const double r = dt / mesh.cell_area[k];
      const double Hn1 = state.H[i][k] - r * dH;
      if (Hn1 < 0.0) {
#ifdef _OPENMP
#pragma omp critical
#endif
        {
          bad_cell = k;
          bad_layer = i;
          bad_value = Hn1;
        }
        continue;
      }
      out.H[i][k] = Hn1;
      if (Hn1 == 0.0) {  // dry by construction, momentum vanishes with it
        out.ux[i][k] = 0.0;
        out.uy[i][k] = 0.0;
      } else {
        out.ux[i][k] = (state.H[i][k] * state.ux[i][k] - r * dmx) / Hn1;
        out.uy[i][k] = (state.H[i][k] * state.uy[i][k] - r * dmy) / Hn1;
      }
    }
  }
  if (bad_cell >= 0) throw PositivityError(bad_cell, bad_layer, bad_value);
}

State step_first_order(const State& state, const Mesh& mesh, const SchemeParams& params,
                       const LayerStack& stack, double dt) {
  SchemeParams p = params;
  p.order_space = 1;
  const HessianInfo hess = hessian(stack);
  State out;
  StepWorkspace ws;
  step_euler(state, mesh, stack, hess, p, dt, out, ws);
  return out;
}

}  // namespace mlswe
