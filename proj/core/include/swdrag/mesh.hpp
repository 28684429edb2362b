#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace swdrag {

using Point = Eigen::Vector2d;

/// Oriented reference from a cell to one of its edges. `sign` is +1 when the
/// edge's global normal points out of the cell and -1 otherwise.
struct CellEdge {
  std::size_t edge = 0;
  int sign = 1;
};

struct CellGeometry {
  double area = 0.0;
  std::array<double, 3> edge_lengths{};
  std::array<Point, 3> outward_normals{};
};

/// Conforming triangulation of the unit square.
///
/// Cells list their vertices counterclockwise. Local edge i of a cell is the
/// edge opposite local vertex i, traversed from vertex i+1 to vertex i+2.
/// Every edge is stored low vertex index first; its global unit normal is the
/// clockwise rotation of the low-to-high tangent.
class Mesh {
 public:
  /// Uniform n-by-n grid, each square split along its lower-left to
  /// upper-right diagonal. Throws std::invalid_argument for n == 0.
  static Mesh unit_square(std::size_t n);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(std::size_t v) const { return vertices_[v]; }
  const std::array<std::size_t, 3>& cell(std::size_t c) const { return cells_.at(c); }
  const std::array<std::size_t, 2>& edge(std::size_t e) const { return edges_.at(e); }
  const std::array<CellEdge, 3>& cell_edges(std::size_t c) const { return cell_edges_.at(c); }
  const std::vector<std::size_t>& boundary_edges() const { return boundary_edges_; }
  bool is_boundary_edge(std::size_t e) const { return on_boundary_.at(e); }

  double edge_length(std::size_t e) const;
  Point edge_normal(std::size_t e) const;
  Point edge_midpoint(std::size_t e) const;

  CellGeometry cell_geometry(std::size_t c) const;

  /// Characteristic mesh size (the grid spacing 1/n).
  double h() const { return h_; }
  std::size_t divisions() const { return n_; }

 private:
  std::size_t n_ = 0;
  double h_ = 0.0;
  std::vector<Point> vertices_;
  std::vector<std::array<std::size_t, 3>> cells_;
  std::vector<std::array<std::size_t, 2>> edges_;
  std::vector<std::array<CellEdge, 3>> cell_edges_;
  std::vector<std::size_t> boundary_edges_;
  std::vector<bool> on_boundary_;
};

/// Plain-text dump (vertex list then cell list) for debugging.
void write_mesh_text(std::ostream& os, const Mesh& mesh);

}  // namespace swdrag
