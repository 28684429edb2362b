#include "swdrag/mesh.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace swdrag {

Mesh Mesh::unit_square(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Mesh::unit_square: n must be positive");

  Mesh m;
  m.n_ = n;
  m.h_ = 1.0 / static_cast<double>(n);

  const std::size_t nv = n + 1;
  m.vertices_.reserve(nv * nv);
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i <= n; ++i)
      m.vertices_.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);

  m.cells_.reserve(2 * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v00 = j * nv + i;
      const std::size_t v10 = v00 + 1;
      const std::size_t v01 = v00 + nv;
      const std::size_t v11 = v01 + 1;
      m.cells_.push_back({v00, v10, v11});
      m.cells_.push_back({v00, v11, v01});
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lookup;
  std::vector<int> incidence;
  m.cell_edges_.resize(m.cells_.size());
  for (std::size_t c = 0; c < m.cells_.size(); ++c) {
    const auto& cv = m.cells_[c];
    for (int le = 0; le < 3; ++le) {
      const std::size_t a = cv[(le + 1) % 3];
      const std::size_t b = cv[(le + 2) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = lookup.try_emplace({key.first, key.second}, m.edges_.size());
      if (inserted) {
        m.edges_.push_back({key.first, key.second});
        incidence.push_back(0);
      }
      ++incidence[it->second];
      m.cell_edges_[c][le] = CellEdge{it->second, a < b ? 1 : -1};
    }
  }

  m.on_boundary_.assign(m.edges_.size(), false);
  for (std::size_t e = 0; e < m.edges_.size(); ++e) {
    if (incidence[e] == 1) {
      m.on_boundary_[e] = true;
      m.boundary_edges_.push_back(e);
    }
  }
  return m;
}

double Mesh::edge_length(std::size_t e) const {
  const auto& ed = edges_.at(e);
  return (vertices_[ed[1]] - vertices_[ed[0]]).norm();
}

Point Mesh::edge_normal(std::size_t e) const {
  const auto& ed = edges_.at(e);
  const Point t = vertices_[ed[1]] - vertices_[ed[0]];
  return Point(t.y(), -t.x()) / t.norm();
}

Point Mesh::edge_midpoint(std::size_t e) const {
  const auto& ed = edges_.at(e);
  return 0.5 * (vertices_[ed[0]] + vertices_[ed[1]]);
}

CellGeometry Mesh::cell_geometry(std::size_t c) const {
  if (c >= cells_.size())
    throw std::out_of_range("Mesh::cell_geometry: cell index " + std::to_string(c) + " out of range");
  const auto& cv = cells_[c];
  const Point& a = vertices_[cv[0]];
  const Point& b = vertices_[cv[1]];
  const Point& d = vertices_[cv[2]];
  CellGeometry g;
  g.area = 0.5 * std::abs((b - a).x() * (d - a).y() - (b - a).y() * (d - a).x());
  for (int le = 0; le < 3; ++le) {
    const Point t = vertices_[cv[(le + 2) % 3]] - vertices_[cv[(le + 1) % 3]];
    g.edge_lengths[le] = t.norm();
    g.outward_normals[le] = Point(t.y(), -t.x()) / t.norm();
  }
  return g;
}

void write_mesh_text(std::ostream& os, const Mesh& mesh) {
  os << std::setprecision(17);
  os << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& p : mesh.vertices()) os << p.x() << ' ' << p.y() << '\n';
  os << "cells " << mesh.num_cells() << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cv = mesh.cell(c);
    os << cv[0] << ' ' << cv[1] << ' ' << cv[2] << '\n';
  }
}

}  // namespace swdrag
