#include "mlswe/time_integration.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlswe {

Eigen::ArrayXd coriolis_field(const CoriolisParams& c, const Mesh& mesh) {
  Eigen::ArrayXd f(mesh.num_cells());
  for (int k = 0; k < mesh.num_cells(); ++k) f[k] = c.f_at(mesh.cell_centroid[k].y());
  return f;
}

double adaptive_dt(const State& state, const Mesh& mesh, const SchemeParams& params,
                   const LayerStack& stack) {
  const int L = stack.num_layers();
  const int nc = mesh.num_cells();
  if (nc == 0) throw std::invalid_argument("adaptive_dt: empty mesh");
  double worst = 0.0;
  for (int k = 0; k < nc; ++k) {
    double hbar = 0.0, qx = 0.0, qy = 0.0;
    for (int i = 0; i < L; ++i) {
      const double h = state.H[i][k] / stack.density[i];
      hbar += h;
      qx += h * state.ux[i][k];
      qy += h * state.uy[i][k];
    }
    if (!(hbar > 0.0)) throw std::invalid_argument("adaptive_dt: dry column");
    const double ubar = std::hypot(qx, qy) / hbar;
    const double speed = ubar + std::sqrt(stack.gravity * hbar) / stack.epsilon;
    worst = std::max(worst, mesh.cell_perimeter[k] * speed / (2.0 * mesh.cell_area[k]));
  }
  return params.tau_cfl / worst;
}

double cfl1_dt(const State& state, const Mesh& mesh, const LayerStack& stack,
               const HessianInfo& hess, double tau) {
  const int L = stack.num_layers();
  double worst = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const int K = ed.left;
    const int Ke = ed.is_boundary() ? K : ed.right;
    const double ratio =
        ed.length * std::max(1.0 / mesh.cell_area[K], 1.0 / mesh.cell_area[Ke]);
    double hmax = 0.0, umax = 0.0;
    for (int i = 0; i < L; ++i) {
      hmax = std::max({hmax, state.H[i][K], state.H[i][Ke]});
      const double un = 0.5 * std::abs((state.ux[i][K] + state.ux[i][Ke]) * ed.normal.x() +
                                       (state.uy[i][K] + state.uy[i][Ke]) * ed.normal.y());
      umax = std::max(umax, un);
    }
    const double c = std::sqrt(hess.spectral_norm * hmax) / stack.epsilon;
    worst = std::max(worst, (umax + c) * ratio);
  }
  if (!(worst > 0.0)) throw std::invalid_argument("cfl1_dt: degenerate state");
  return tau / worst;
}

namespace {

void recover_velocity(const Eigen::ArrayXd& H, const Eigen::ArrayXd& px, const Eigen::ArrayXd& py,
                      Eigen::ArrayXd& ux, Eigen::ArrayXd& uy) {
  const Eigen::Index n = H.size();
  ux.resize(n);
  uy.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (H[k] == 0.0) {
      ux[k] = 0.0;
      uy[k] = 0.0;
    } else {
      ux[k] = px[k] / H[k];
      uy[k] = py[k] / H[k];
    }
  }
}

}  // namespace

State half_sum(const State& a, const State& b) {
  const int L = a.num_layers();
  State out;
  out.z_b = a.z_b;
  out.H.resize(L);
  out.ux.resize(L);
  out.uy.resize(L);
  for (int i = 0; i < L; ++i) {
    out.H[i] = 0.5 * (a.H[i] + b.H[i]);
    const Eigen::ArrayXd px = 0.5 * (a.H[i] * a.ux[i] + b.H[i] * b.ux[i]);
    const Eigen::ArrayXd py = 0.5 * (a.H[i] * a.uy[i] + b.H[i] * b.uy[i]);
    recover_velocity(out.H[i], px, py, out.ux[i], out.uy[i]);
  }
  return out;
}

State hcn_combine(const State& at_n, const State& u1, const State& u2, const State& u3) {
  const int L = at_n.num_layers();
  State out;
  out.z_b = at_n.z_b;
  out.H.resize(L);
  out.ux.resize(L);
  out.uy.resize(L);
  for (int i = 0; i < L; ++i) {
    out.H[i] = 0.5 * ((at_n.H[i] + u3.H[i]) + (u2.H[i] - u1.H[i]));
    const Eigen::ArrayXd px = 0.5 * ((at_n.H[i] * at_n.ux[i] + u3.H[i] * u3.ux[i]) +
                                     (u2.H[i] * u2.ux[i] - u1.H[i] * u1.ux[i]));
    const Eigen::ArrayXd py = 0.5 * ((at_n.H[i] * at_n.uy[i] + u3.H[i] * u3.uy[i]) +
                                     (u2.H[i] * u2.uy[i] - u1.H[i] * u1.uy[i]));
    recover_velocity(out.H[i], px, py, out.ux[i], out.uy[i]);
  }
  return out;
}

void coriolis_cn_stage(const State& base, const State& at_n, const Eigen::ArrayXd& f, double dt,
                       State& out) {
  const int L = base.num_layers();
  const int nc = base.num_cells();
  out.z_b = base.z_b;
  out.H = base.H;
  out.ux.resize(L);
  out.uy.resize(L);
  for (int i = 0; i < L; ++i) {
    out.ux[i].resize(nc);
    out.uy[i].resize(nc);
    for (int k = 0; k < nc; ++k) {
      const double a = 0.5 * f[k] * dt;
      if (a == 0.0) {
        out.ux[i][k] = base.ux[i][k];
        out.uy[i][k] = base.uy[i][k];
        continue;
      }
      const double H1 = base.H[i][k];
      const double p1 = H1 * base.ux[i][k], q1 = H1 * base.uy[i][k];
      const double pn = at_n.H[i][k] * at_n.ux[i][k], qn = at_n.H[i][k] * at_n.uy[i][k];
      const double bu = p1 + a * qn, bv = q1 - a * pn;
      const double det = 1.0 + a * a;
      const double p2 = (bu + a * bv) / det, q2 = (bv - a * bu) / det;
      if (H1 == 0.0) {
        out.ux[i][k] = 0.0;
        out.uy[i][k] = 0.0;
      } else {
        out.ux[i][k] = p2 / H1;
        out.uy[i][k] = q2 / H1;
      }
    }
  }
}

}  // namespace mlswe
