#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mlswe/mesh.hpp"
#include "mlswe/physics.hpp"

namespace mlswe {

/// Per-cell 2-vector gradients of one scalar field, rows = cells.
using CellGradients = Eigen::Array<double, Eigen::Dynamic, 2>;

/// Geometry factors of the per-cell least-squares normal equations, built
/// once per mesh. Collinear stencils are flagged and get zero gradients.
struct GradientWorkspace {
  std::vector<Eigen::Matrix2d> inv_normal;  // inverse of sum d d^T
  std::vector<bool> singular;
  bool built = false;

  void build(const Mesh& mesh);
};

/// Least-squares monoslope gradient: per cell, minimize over grad
/// sum_e (W_Ke - W_K - grad . (x_Ke - x_K))^2 via the 2x2 normal equations.
/// Boundary edges contribute a mirror-ghost neighbor with the same value
/// (zero-gradient data), which leaves constant fields exact.
void least_squares_slopes(const Eigen::ArrayXd& field, const Mesh& mesh, GradientWorkspace& ws,
                          CellGradients& grad);

/// Barth limiter: scales each cell gradient by theta in [0,1] so every edge
/// trace stays within the min/max over the cell and its edge neighbors.
void barth_limiter(const Eigen::ArrayXd& field, const Mesh& mesh, CellGradients& grad);

/// Clips gradient norms to coeff * h^(1-r); identity when r <= 0.
void slope_cap(CellGradients& grad, double mesh_scale, double r, double coeff = 1.0);

/// Primitive traces on both sides of every edge. Water columns are
/// reconstructed through the surface elevations eta_i; heights are recovered
/// as differences down to the edge bed elevation z_be = (z_K + z_Ke)/2, and
/// the potentials are evaluated from the traced columns.
struct TraceSet {
  // per layer, per edge
  std::vector<Eigen::ArrayXd> h_left, h_right;  // heights
  std::vector<Eigen::ArrayXd> H_left, H_right;  // effective masses
  std::vector<Eigen::ArrayXd> ux_left, ux_right;
  std::vector<Eigen::ArrayXd> uy_left, uy_right;
  std::vector<Eigen::ArrayXd> phi_left, phi_right;
};

struct SchemeParams;  // scheme.hpp

void compute_traces(const State& state, const Mesh& mesh, const LayerStack& stack,
                    bool limit_eta, double slope_cap_r, double slope_cap_coeff, TraceSet& traces,
                    GradientWorkspace& ws);

}  // namespace mlswe
