#include "mlswe/reconstruction.hpp"

#include <cmath>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mlswe {

void GradientWorkspace::build(const Mesh& mesh) {
  const int nc = mesh.num_cells();
  inv_normal.assign(nc, Eigen::Matrix2d::Zero());
  singular.assign(nc, false);

  std::vector<Eigen::Matrix2d> a(nc, Eigen::Matrix2d::Zero());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const Vec2 d = ed.disp;
    a[ed.left] += d * d.transpose();
    if (!ed.is_boundary()) a[ed.right] += d * d.transpose();
  }
  bool warned = false;
  for (int k = 0; k < nc; ++k) {
    const double det = a[k].determinant();
    const double scale = a[k].trace();
    if (det <= 1e-12 * scale * scale) {
      singular[k] = true;
      if (!warned) {
        std::cerr << "warning: collinear gradient stencil, zero slope in cell " << k << "\n";
        warned = true;
      }
      continue;
    }
    inv_normal[k] = a[k].inverse();
  }
  built = true;
}

void least_squares_slopes(const Eigen::ArrayXd& field, const Mesh& mesh, GradientWorkspace& ws,
                          CellGradients& grad) {
  if (!ws.built) ws.build(mesh);
  const int nc = mesh.num_cells();
  grad.resize(nc, 2);
  grad.setZero();
  // right-hand sides sum_e d (W_Ke - W_K); boundary ghosts carry W_K, so they
  // add nothing
  Eigen::ArrayX2d rhs = Eigen::ArrayX2d::Zero(nc, 2);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    if (ed.is_boundary()) continue;
    const double dw = field[ed.right] - field[ed.left];
    rhs(ed.left, 0) += ed.disp.x() * dw;
    rhs(ed.left, 1) += ed.disp.y() * dw;
    rhs(ed.right, 0) += ed.disp.x() * dw;  // same sign: -d and -dw
    rhs(ed.right, 1) += ed.disp.y() * dw;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int k = 0; k < nc; ++k) {
    if (ws.singular[k]) continue;
    const Eigen::Vector2d g = ws.inv_normal[k] * Eigen::Vector2d(rhs(k, 0), rhs(k, 1));
    grad(k, 0) = g.x();
    grad(k, 1) = g.y();
  }
}

void barth_limiter(const Eigen::ArrayXd& field, const Mesh& mesh, CellGradients& grad) {
  const int nc = mesh.num_cells();
  Eigen::ArrayXd wmin = field, wmax = field;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    if (ed.is_boundary()) continue;
    const double wl = field[ed.left], wr = field[ed.right];
    wmin[ed.left] = std::min(wmin[ed.left], wr);
    wmax[ed.left] = std::max(wmax[ed.left], wr);
    wmin[ed.right] = std::min(wmin[ed.right], wl);
    wmax[ed.right] = std::max(wmax[ed.right], wl);
  }
  Eigen::ArrayXd theta = Eigen::ArrayXd::Ones(nc);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const auto clip = [&](int k, const Vec2& r) {
      const double d = grad(k, 0) * r.x() + grad(k, 1) * r.y();
      if (d > 0.0)
        theta[k] = std::min(theta[k], (wmax[k] - field[k]) / d);
      else if (d < 0.0)
        theta[k] = std::min(theta[k], (wmin[k] - field[k]) / d);
    };
    clip(ed.left, ed.r_left);
    if (!ed.is_boundary()) clip(ed.right, ed.r_right);
  }
  for (int k = 0; k < nc; ++k) {
    const double t = std::clamp(theta[k], 0.0, 1.0);
    grad(k, 0) *= t;
    grad(k, 1) *= t;
  }
}

void slope_cap(CellGradients& grad, double mesh_scale, double r, double coeff) {
  if (r <= 0.0) return;
  const double cap = coeff * std::pow(mesh_scale, 1.0 - r);
  for (Eigen::Index k = 0; k < grad.rows(); ++k) {
    const double norm = std::hypot(grad(k, 0), grad(k, 1));
    if (norm > cap) {
      const double s = cap / norm;
      grad(k, 0) *= s;
      grad(k, 1) *= s;
    }
  }
}

void compute_traces(const State& state, const Mesh& mesh, const LayerStack& stack,
                    bool limit_eta, double slope_cap_r, double slope_cap_coeff, TraceSet& traces,
                    GradientWorkspace& ws) {
  const int L = stack.num_layers();
  const int nc = mesh.num_cells();
  const int ne = mesh.num_edges();
  if (!ws.built) ws.build(mesh);

  auto resize_all = [&](std::vector<Eigen::ArrayXd>& v) {
    v.resize(L);
    for (auto& a : v) a.resize(ne);
  };
  resize_all(traces.h_left);
  resize_all(traces.h_right);
  resize_all(traces.H_left);
  resize_all(traces.H_right);
  resize_all(traces.ux_left);
  resize_all(traces.ux_right);
  resize_all(traces.uy_left);
  resize_all(traces.uy_right);
  resize_all(traces.phi_left);
  resize_all(traces.phi_right);

  const double h_mesh = mesh.length_scale();

  // surfaces bottom-up: eta_{L-1} = z_b + h_{L-1}, eta_i = eta_{i+1} + h_i
  std::vector<Eigen::ArrayXd> eta(L);
  for (int i = L - 1; i >= 0; --i) {
    eta[i] = (i == L - 1) ? (state.z_b + state.H[i] / stack.density[i]).eval()
                          : (eta[i + 1] + state.H[i] / stack.density[i]).eval();
  }

  std::vector<CellGradients> geta(L), gux(L), guy(L);
  for (int i = 0; i < L; ++i) {
    least_squares_slopes(eta[i], mesh, ws, geta[i]);
    if (limit_eta) barth_limiter(eta[i], mesh, geta[i]);
    least_squares_slopes(state.ux[i], mesh, ws, gux[i]);
    least_squares_slopes(state.uy[i], mesh, ws, guy[i]);
    if (slope_cap_r > 0.0) {
      slope_cap(geta[i], h_mesh, slope_cap_r, slope_cap_coeff);
      slope_cap(gux[i], h_mesh, slope_cap_r, slope_cap_coeff);
      slope_cap(guy[i], h_mesh, slope_cap_r, slope_cap_coeff);
    }
  }

  // per-edge traces: eta from slopes, heights by telescoping down to z_be,
  // potentials from the traced columns (bottom-first so that a rest column
  // collapses to the exact surface levels on both sides)
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = mesh.edges[e];
    const int K = ed.left;
    const int Ke = ed.is_boundary() ? K : ed.right;
    const double z_be = ed.is_boundary() ? state.z_b[K] : 0.5 * (state.z_b[K] + state.z_b[Ke]);

    double eta_below_l = z_be, eta_below_r = z_be;
    for (int i = L - 1; i >= 0; --i) {
      double el = eta[i][K] + geta[i](K, 0) * ed.r_left.x() + geta[i](K, 1) * ed.r_left.y();
      double er = ed.is_boundary()
                      ? el
                      : eta[i][Ke] + geta[i](Ke, 0) * ed.r_right.x() + geta[i](Ke, 1) * ed.r_right.y();
      double hl = el - eta_below_l;
      double hr = er - eta_below_r;
      if (hl < 0.0) hl = state.H[i][K] / stack.density[i];  // local first-order fallback
      if (hr < 0.0) hr = state.H[i][Ke] / stack.density[i];
      traces.h_left[i][e] = hl;
      traces.h_right[i][e] = hr;
      traces.H_left[i][e] = stack.density[i] * hl;
      traces.H_right[i][e] = stack.density[i] * hr;
      eta_below_l += hl;
      eta_below_r += hr;

      const double uxl = state.ux[i][K] + gux[i](K, 0) * ed.r_left.x() + gux[i](K, 1) * ed.r_left.y();
      const double uyl = state.uy[i][K] + guy[i](K, 0) * ed.r_left.x() + guy[i](K, 1) * ed.r_left.y();
      traces.ux_left[i][e] = uxl;
      traces.uy_left[i][e] = uyl;
      if (ed.is_boundary()) {
        Vec2 u(uxl, uyl);
        if (ed.bc == BoundaryKind::slip_wall) u -= 2.0 * u.dot(ed.normal) * ed.normal;
        traces.ux_right[i][e] = u.x();
        traces.uy_right[i][e] = u.y();
      } else {
        traces.ux_right[i][e] =
            state.ux[i][Ke] + gux[i](Ke, 0) * ed.r_right.x() + gux[i](Ke, 1) * ed.r_right.y();
        traces.uy_right[i][e] =
            state.uy[i][Ke] + guy[i](Ke, 0) * ed.r_right.x() + guy[i](Ke, 1) * ed.r_right.y();
      }
    }

    // potentials from the traced heights
    for (int i = 0; i < L; ++i) {
      double al = z_be, ar = z_be;
      for (int j = L - 1; j >= 0; --j) {
        const double w = stack.density[j] / std::max(stack.density[i], stack.density[j]);
        al += w * traces.h_left[j][e];
        ar += w * traces.h_right[j][e];
      }
      traces.phi_left[i][e] = stack.gravity * al;
      traces.phi_right[i][e] = stack.gravity * ar;
    }
  }
}

}  // namespace mlswe
