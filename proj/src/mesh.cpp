#include "mlswe/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mlswe {

double Mesh::length_scale() const {
  double h = std::numeric_limits<double>::max();
  for (int k = 0; k < num_cells(); ++k)
    h = std::min(h, 2.0 * cell_area[k] / cell_perimeter[k]);
  return h;
}

void Mesh::finalize() {
  const int nc = num_cells();
  const int ne = num_edges();

  cell_mu.resize(nc);
  for (int k = 0; k < nc; ++k) {
    if (!(cell_area[k] > 0.0) || !(cell_perimeter[k] > 0.0))
      throw std::invalid_argument("mesh: non-positive cell area or perimeter");
    cell_mu[k] = cell_perimeter[k] / (2.0 * cell_area[k]);
  }

  inv_delta_e.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Edge& ed = edges[e];
    if (!(ed.length > 0.0)) throw std::invalid_argument("mesh: non-positive edge length");
    const double dk = cell_perimeter[ed.left] / cell_area[ed.left];
    // boundary edges use a mirror ghost with identical geometry
    const double dke = ed.is_boundary() ? dk : cell_perimeter[ed.right] / cell_area[ed.right];
    inv_delta_e[e] = 0.5 * (dk + dke);
  }

  cell_edges.assign(nc, {});
  for (int e = 0; e < ne; ++e) {
    cell_edges[edges[e].left].push_back({e, 1.0});
    // a periodic wrap onto the same cell contributes through both faces
    if (!edges[e].is_boundary()) cell_edges[edges[e].right].push_back({e, -1.0});
  }
  for (auto& inc : cell_edges)
    std::sort(inc.begin(), inc.end(),
              [](const Incidence& a, const Incidence& b) {
                return a.edge != b.edge ? a.edge < b.edge : a.sign > b.sign;
              });

  // closed-polygon identity and perimeter consistency
  for (int k = 0; k < nc; ++k) {
    Vec2 gauss = Vec2::Zero();
    double per = 0.0;
    for (const auto& [e, s] : cell_edges[k]) {
      gauss += s * edges[e].length * edges[e].normal;
      per += edges[e].length;
    }
    if (gauss.norm() > 1e-12 * cell_perimeter[k])
      throw std::invalid_argument("mesh: cell violates the closed-polygon identity");
    if (std::abs(per - cell_perimeter[k]) > 1e-12 * cell_perimeter[k])
      throw std::invalid_argument("mesh: perimeter does not match edge lengths");
  }
}

Mesh build_cartesian(int nx, int ny, double Lx, double Ly, const BoundarySpec& bc) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_cartesian: nx, ny must be >= 1");
  if (!(Lx > 0.0) || !(Ly > 0.0)) throw std::invalid_argument("build_cartesian: Lx, Ly must be > 0");
  const bool px = bc.west == BoundaryKind::periodic;
  const bool py = bc.south == BoundaryKind::periodic;
  if (px != (bc.east == BoundaryKind::periodic) || py != (bc.north == BoundaryKind::periodic))
    throw std::invalid_argument("build_cartesian: periodic sides must be paired");

  const double dx = Lx / nx, dy = Ly / ny;
  Mesh m;
  m.nx = nx;
  m.ny = ny;
  m.Lx = Lx;
  m.Ly = Ly;

  const int nc = nx * ny;
  m.cell_area = Eigen::ArrayXd::Constant(nc, dx * dy);
  m.cell_perimeter = Eigen::ArrayXd::Constant(nc, 2.0 * (dx + dy));
  m.cell_centroid.resize(nc);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      m.cell_centroid[iy * nx + ix] = Vec2((ix + 0.5) * dx, (iy + 0.5) * dy);

  auto id = [nx](int ix, int iy) { return iy * nx + ix; };

  // vertical edges (normal +x): east face of every cell
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      Edge e;
      e.length = dy;
      e.normal = Vec2(1, 0);
      e.midpoint = Vec2((ix + 1) * dx, (iy + 0.5) * dy);
      e.left = id(ix, iy);
      if (ix + 1 < nx) {
        e.right = id(ix + 1, iy);
      } else if (px) {
        e.right = id(0, iy);
      } else {
        e.right = -1;
        e.bc = bc.east;
      }
      e.disp = Vec2(dx, 0);
      e.r_left = Vec2(0.5 * dx, 0);
      e.r_right = Vec2(-0.5 * dx, 0);
      m.edges.push_back(e);
    }
    if (!px) {  // west boundary edge of the first cell in the row
      Edge e;
      e.length = dy;
      e.normal = Vec2(-1, 0);
      e.midpoint = Vec2(0.0, (iy + 0.5) * dy);
      e.left = id(0, iy);
      e.right = -1;
      e.bc = bc.west;
      e.disp = Vec2(-dx, 0);
      e.r_left = Vec2(-0.5 * dx, 0);
      e.r_right = Vec2(0.5 * dx, 0);
      m.edges.push_back(e);
    }
  }
  // horizontal edges (normal +y): north face of every cell
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      Edge e;
      e.length = dx;
      e.normal = Vec2(0, 1);
      e.midpoint = Vec2((ix + 0.5) * dx, (iy + 1) * dy);
      e.left = id(ix, iy);
      if (iy + 1 < ny) {
        e.right = id(ix, iy + 1);
      } else if (py) {
        e.right = id(ix, 0);
      } else {
        e.right = -1;
        e.bc = bc.north;
      }
      e.disp = Vec2(0, dy);
      e.r_left = Vec2(0, 0.5 * dy);
      e.r_right = Vec2(0, -0.5 * dy);
      m.edges.push_back(e);
    }
  }
  if (!py) {  // south boundary edges
    for (int ix = 0; ix < nx; ++ix) {
      Edge e;
      e.length = dx;
      e.normal = Vec2(0, -1);
      e.midpoint = Vec2((ix + 0.5) * dx, 0.0);
      e.left = id(ix, 0);
      e.right = -1;
      e.bc = bc.south;
      e.disp = Vec2(0, -dy);
      e.r_left = Vec2(0, -0.5 * dy);
      e.r_right = Vec2(0, 0.5 * dy);
      m.edges.push_back(e);
    }
  }

  m.finalize();
  return m;
}

Mesh import_mesh(std::istream& in) {
  std::string word;
  int nc = 0, ne = 0;
  if (!(in >> word) || word != "cells" || !(in >> nc) || !(in >> word) || word != "edges" ||
      !(in >> ne) || nc <= 0 || ne <= 0)
    throw std::invalid_argument("import_mesh: bad header, expected 'cells N edges M'");

  Mesh m;
  m.cell_area.resize(nc);
  m.cell_perimeter.resize(nc);
  m.cell_centroid.resize(nc);
  for (int k = 0; k < nc; ++k) {
    int id;
    double a, p, cx, cy;
    if (!(in >> id >> a >> p >> cx >> cy) || id != k)
      throw std::invalid_argument("import_mesh: bad cell line " + std::to_string(k));
    m.cell_area[k] = a;
    m.cell_perimeter[k] = p;
    m.cell_centroid[k] = Vec2(cx, cy);
  }
  for (int e = 0; e < ne; ++e) {
    int id, left;
    double len, mx, my, nxv, nyv;
    std::string rhs;
    if (!(in >> id >> len >> mx >> my >> nxv >> nyv >> left >> rhs) || id != e)
      throw std::invalid_argument("import_mesh: bad edge line " + std::to_string(e));
    Edge ed;
    ed.length = len;
    ed.midpoint = Vec2(mx, my);
    ed.normal = Vec2(nxv, nyv);
    ed.left = left;
    if (rhs == "slip") {
      ed.right = -1;
      ed.bc = BoundaryKind::slip_wall;
    } else if (rhs == "outflow") {
      ed.right = -1;
      ed.bc = BoundaryKind::outflow;
    } else {
      ed.right = std::stoi(rhs);
    }
    if (ed.left < 0 || ed.left >= nc || ed.right >= nc)
      throw std::invalid_argument("import_mesh: edge references unknown cell");
    ed.disp = ed.is_boundary() ? Vec2(2.0 * (ed.midpoint - m.cell_centroid[ed.left]))
                               : Vec2(m.cell_centroid[ed.right] - m.cell_centroid[ed.left]);
    ed.r_left = ed.midpoint - m.cell_centroid[ed.left];
    ed.r_right = ed.is_boundary() ? Vec2(-ed.r_left) : Vec2(ed.midpoint - m.cell_centroid[ed.right]);
    m.edges.push_back(ed);
  }
  m.finalize();
  return m;
}

Mesh import_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("import_mesh: cannot open " + path);
  return import_mesh(in);
}

}  // namespace mlswe
