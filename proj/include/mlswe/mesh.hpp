#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace mlswe {

using Vec2 = Eigen::Vector2d;

enum class BoundaryKind { periodic, slip_wall, outflow };

/// Boundary condition per side of a rectangular domain. Periodic sides must
/// come in matching pairs (west/east, south/north).
struct BoundarySpec {
  BoundaryKind west = BoundaryKind::periodic;
  BoundaryKind east = BoundaryKind::periodic;
  BoundaryKind south = BoundaryKind::periodic;
  BoundaryKind north = BoundaryKind::periodic;

  static BoundarySpec all(BoundaryKind k) { return {k, k, k, k}; }
  static BoundarySpec all_periodic() { return all(BoundaryKind::periodic); }
  static BoundarySpec all_slip() { return all(BoundaryKind::slip_wall); }
};

struct Edge {
  double length = 0.0;     // m_e
  Vec2 midpoint{0, 0};     // x_e
  Vec2 normal{0, 0};       // n_{e,K}, outward from cell `left`
  int left = -1;           // cell K
  int right = -1;          // cell K_e; -1 on boundary edges
  BoundaryKind bc = BoundaryKind::slip_wall;  // used when right < 0
  // displacement x_{K_e} - x_K and trace offsets x_e - x_K, both wrapped on
  // periodic edges so they describe the local geometry across e
  Vec2 disp{0, 0};
  Vec2 r_left{0, 0};
  Vec2 r_right{0, 0};

  bool is_boundary() const { return right < 0; }
};

/// Polygonal tesselation with all geometric constants used by the scheme.
/// Immutable after construction; safe for shared concurrent reads.
class Mesh {
public:
  Eigen::ArrayXd cell_area;       // m_K
  Eigen::ArrayXd cell_perimeter;  // m_dK
  std::vector<Vec2> cell_centroid;
  std::vector<Edge> edges;

  // per-cell incidence: (edge index, +1 if the cell is edge.left else -1),
  // sorted by edge index so accumulation order is reproducible
  struct Incidence {
    int edge;
    double sign;
  };
  std::vector<std::vector<Incidence>> cell_edges;

  // cached geometric constants
  Eigen::ArrayXd inv_delta_e;  // 1/Delta_e per edge
  Eigen::ArrayXd cell_mu;      // m_dK / (2 m_K), the per-cell factor in (H/Delta)

  // set by the Cartesian generator, -1 otherwise
  int nx = -1, ny = -1;
  double Lx = 0.0, Ly = 0.0;

  int num_cells() const { return static_cast<int>(cell_area.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  bool is_cartesian() const { return nx > 0; }

  double edge_delta(int e) const { return 1.0 / inv_delta_e[e]; }

  /// Characteristic mesh length, min over cells of 2 m_K / m_dK.
  double length_scale() const;

  /// Recomputes the cached 1/Delta_e and mu arrays and checks the closed
  /// polygon identity per cell; called by the builders.
  void finalize();
};

/// Uniform quadrilateral mesh on [0,Lx] x [0,Ly]. Cells are numbered
/// lexicographically, id = iy*nx + ix. Throws std::invalid_argument on
/// non-positive sizes or unpaired periodic sides.
Mesh build_cartesian(int nx, int ny, double Lx, double Ly,
                     const BoundarySpec& bc = BoundarySpec::all_periodic());

/// Plain-text mesh import. Header "cells N edges M", then one line per cell
/// (id area perimeter cx cy) and one line per edge
/// (id length mx my nx ny left right-or-tag), tag in {slip, outflow}.
Mesh import_mesh(std::istream& in);
Mesh import_mesh_file(const std::string& path);

}  // namespace mlswe
