#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mlswe/mesh.hpp"

namespace mlswe {

/// Layer configuration: densities from the top layer down (nondecreasing for
/// stable stratification), gravity, and the Froude-type scale factor.
struct LayerStack {
  Eigen::ArrayXd density;  // rho_i, i = 1 (top) .. L (bottom)
  double gravity = 9.81;
  double epsilon = 1.0;

  int num_layers() const { return static_cast<int>(density.size()); }

  static LayerStack uniform(int layers, double rho, double g, double eps = 1.0) {
    return {Eigen::ArrayXd::Constant(layers, rho), g, eps};
  }
};

void validate(const LayerStack& stack);

/// Hessian of the potential energy with respect to the effective masses H_i,
/// d(Phi_i)/d(H_j) = g / rho_max(i,j), and its spectral norm C_H.
///
/// Note the per-height Jacobian d(Phi_i)/d(h_j) = g rho_j / rho_max(i,j) is
/// not symmetric; only the mass form is, and it is the one the stabilizers
/// and the energy estimates are built on (Phi = Hessian * H + g z_b).
struct HessianInfo {
  Eigen::MatrixXd matrix;
  double spectral_norm = 0.0;  // C_H
  bool monotone_density = true;
};

HessianInfo hessian(const LayerStack& stack);

/// Per-cell, per-layer flow state. Layer arrays hold the effective mass
/// H = rho_i h_i and the two velocity components; z_b is per cell.
struct State {
  std::vector<Eigen::ArrayXd> H;
  std::vector<Eigen::ArrayXd> ux;
  std::vector<Eigen::ArrayXd> uy;
  Eigen::ArrayXd z_b;

  int num_layers() const { return static_cast<int>(H.size()); }
  int num_cells() const { return static_cast<int>(z_b.size()); }

  static State zero(int layers, int cells);
  Eigen::ArrayXd height(const LayerStack& stack, int layer) const {
    return H[layer] / stack.density[layer];
  }
  /// Surface elevation of layer i (1-based concept, 0-based index):
  /// eta_i = z_b + sum_{k>=i} h_k.
  Eigen::ArrayXd surface(const LayerStack& stack, int layer) const;
};

/// Scalar potential Phi_i = g (z_b + sum_j rho_j/rho_max(i,j) h_j) for every
/// layer of one cell.
Eigen::ArrayXd potential(const LayerStack& stack, const State& state, int cell);

/// Potential of every cell for one layer, written into `out` (resized).
void potential_layer(const LayerStack& stack, const State& state, int layer,
                     Eigen::ArrayXd& out);

struct EnergyBreakdown {
  double total = 0.0;    // E
  double kinetic = 0.0;  // velocity part alone
};

/// Discrete mechanical energy
///   E = 1/2 sum_K sum_i m_K (rho_i/rho_L)
///         (h_i |u_i|^2 / eps^2 + g h_i^2 + 2 sum_{j>i} g h_i h_j).
EnergyBreakdown mechanical_energy(const LayerStack& stack, const State& state, const Mesh& mesh);

/// Mechanical energy of the deviation from a motionless reference with layer
/// heights `rest_h` (one value per layer, flat reference). Algebraically
/// equal to E(state) - E(reference) when per-layer mass matches the
/// reference, but evaluated directly from the deviations so that tiny
/// perturbations of a deep column are not lost to cancellation.
EnergyBreakdown perturbation_energy(const LayerStack& stack, const State& state, const Mesh& mesh,
                                    const Eigen::ArrayXd& rest_h);

/// Compensated (Neumaier) serial sum; deterministic regardless of threads.
double stable_sum(const Eigen::ArrayXd& v);

}  // namespace mlswe
