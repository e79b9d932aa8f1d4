#include "mlswe/physics.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace mlswe {

void validate(const LayerStack& stack) {
  if (stack.num_layers() < 1) throw std::invalid_argument("layer stack: L >= 1 required");
  if (!(stack.gravity > 0.0)) throw std::invalid_argument("layer stack: g must be > 0");
  if (!(stack.epsilon > 0.0)) throw std::invalid_argument("layer stack: epsilon must be > 0");
  for (int i = 0; i < stack.num_layers(); ++i)
    if (!(stack.density[i] > 0.0)) throw std::invalid_argument("layer stack: densities must be > 0");
}

HessianInfo hessian(const LayerStack& stack) {
  validate(stack);
  const int L = stack.num_layers();
  HessianInfo info;
  info.matrix.resize(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      info.matrix(i, j) = stack.gravity / std::max(stack.density[i], stack.density[j]);
  info.spectral_norm = info.matrix.jacobiSvd().singularValues()(0);

  for (int i = 0; i + 1 < L; ++i)
    if (stack.density[i] > stack.density[i + 1]) info.monotone_density = false;
  if (!info.monotone_density)
    std::cerr << "warning: non-monotone layer densities, hyperbolicity at risk\n";
  return info;
}

State State::zero(int layers, int cells) {
  State s;
  s.H.assign(layers, Eigen::ArrayXd::Zero(cells));
  s.ux.assign(layers, Eigen::ArrayXd::Zero(cells));
  s.uy.assign(layers, Eigen::ArrayXd::Zero(cells));
  s.z_b = Eigen::ArrayXd::Zero(cells);
  return s;
}

Eigen::ArrayXd State::surface(const LayerStack& stack, int layer) const {
  Eigen::ArrayXd eta = z_b;
  for (int k = layer; k < num_layers(); ++k) eta += H[k] / stack.density[k];
  return eta;
}

// The column sums run bottom-up so that a motionless column collapses to the
// constant surface levels without spreading round-off across cells.
Eigen::ArrayXd potential(const LayerStack& stack, const State& state, int cell) {
  const int L = stack.num_layers();
  Eigen::ArrayXd phi(L);
  for (int i = 0; i < L; ++i) {
    double s = state.z_b[cell];
    for (int j = L - 1; j >= 0; --j)
      s += state.H[j][cell] / std::max(stack.density[i], stack.density[j]);
    phi[i] = stack.gravity * s;
  }
  return phi;
}

void potential_layer(const LayerStack& stack, const State& state, int layer,
                     Eigen::ArrayXd& out) {
  const int L = stack.num_layers();
  out = state.z_b;
  for (int j = L - 1; j >= 0; --j)
    out += state.H[j] * (1.0 / std::max(stack.density[layer], stack.density[j]));
  out *= stack.gravity;
}

double stable_sum(const Eigen::ArrayXd& v) {
  double s = 0.0, c = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + c;
}

EnergyBreakdown mechanical_energy(const LayerStack& stack, const State& state, const Mesh& mesh) {
  return perturbation_energy(stack, state, mesh,
                             Eigen::ArrayXd::Zero(stack.num_layers()));
}

EnergyBreakdown perturbation_energy(const LayerStack& stack, const State& state, const Mesh& mesh,
                                    const Eigen::ArrayXd& rest_h) {
  const int L = stack.num_layers();
  const int nc = state.num_cells();
  const double g = stack.gravity;
  const double rhoL = stack.density[L - 1];
  const double inv_eps2 = 1.0 / (stack.epsilon * stack.epsilon);

  // E - E_rest = 1/2 dh' M dh + (M h_rest)' dh + kinetic, M_ij = g rho_min(i,j)/rho_L
  Eigen::MatrixXd M(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) M(i, j) = g * std::min(stack.density[i], stack.density[j]) / rhoL;
  const Eigen::VectorXd lin = M * rest_h.matrix();

  Eigen::ArrayXd kin(nc), pot(nc);
  kin.setZero();
  pot.setZero();
  std::vector<Eigen::ArrayXd> dh(L);
  for (int i = 0; i < L; ++i) dh[i] = state.H[i] / stack.density[i] - rest_h[i];
  for (int i = 0; i < L; ++i) {
    const double wi = stack.density[i] / rhoL;
    kin += (0.5 * wi * inv_eps2) * (state.H[i] / stack.density[i]) *
           (state.ux[i].square() + state.uy[i].square());
    pot += lin[i] * dh[i];
    for (int j = 0; j < L; ++j) pot += (0.5 * M(i, j)) * dh[i] * dh[j];
  }
  EnergyBreakdown e;
  e.kinetic = stable_sum((mesh.cell_area * kin).eval());
  e.total = e.kinetic + stable_sum((mesh.cell_area * pot).eval());
  return e;
}

}  // namespace mlswe
