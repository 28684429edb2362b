#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "swdrag/mesh.hpp"

using swdrag::Mesh;
using swdrag::Point;

namespace {

double signed_area(const Mesh& m, std::size_t c) {
  const auto& v = m.cell(c);
  const Point a = m.vertex(v[1]) - m.vertex(v[0]);
  const Point b = m.vertex(v[2]) - m.vertex(v[0]);
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

}  // namespace

TEST(Mesh, CountsSingleSquare) {
  const Mesh m = Mesh::unit_square(1);
  EXPECT_EQ(m.num_vertices(), 4u);
  EXPECT_EQ(m.num_cells(), 2u);
  EXPECT_EQ(m.num_edges(), 5u);
  EXPECT_EQ(m.boundary_edges().size(), 4u);
}

TEST(Mesh, CountsTwentyByTwenty) {
  const Mesh m = Mesh::unit_square(20);
  EXPECT_EQ(m.num_vertices(), 441u);
  EXPECT_EQ(m.num_cells(), 800u);
  EXPECT_EQ(m.num_edges(), 3u * 400u + 2u * 20u);
  EXPECT_EQ(m.boundary_edges().size(), 80u);
  EXPECT_DOUBLE_EQ(m.h(), 0.05);
  // Euler characteristic of a disc.
  EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_cells(), 1u);
}

TEST(Mesh, ZeroDivisionsThrows) { EXPECT_THROW(Mesh::unit_square(0), std::invalid_argument); }

TEST(Mesh, CellsCounterclockwiseAndTileTheSquare) {
  for (std::size_t n : {1u, 3u, 8u}) {
    const Mesh m = Mesh::unit_square(n);
    double total = 0.0;
    for (std::size_t c = 0; c < m.num_cells(); ++c) {
      const double a = signed_area(m, c);
      EXPECT_GT(a, 0.0);
      EXPECT_NEAR(m.cell_geometry(c).area, a, 1e-15);
      total += a;
    }
    EXPECT_NEAR(total, 1.0, 1e-13);
  }
}

TEST(Mesh, EdgeConventions) {
  const Mesh m = Mesh::unit_square(4);
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const auto& ed = m.edge(e);
    EXPECT_LT(ed[0], ed[1]);
    const Point t = m.vertex(ed[1]) - m.vertex(ed[0]);
    const Point n = m.edge_normal(e);
    EXPECT_NEAR(n.norm(), 1.0, 1e-15);
    EXPECT_NEAR(n.dot(t), 0.0, 1e-15);
    // clockwise rotation of the tangent
    EXPECT_NEAR(n.x(), t.y() / t.norm(), 1e-15);
    EXPECT_NEAR(n.y(), -t.x() / t.norm(), 1e-15);
    EXPECT_NEAR(m.edge_length(e), t.norm(), 1e-15);
  }
}

TEST(Mesh, LocalEdgeOppositeVertexAndSigns) {
  const Mesh m = Mesh::unit_square(3);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const auto& v = m.cell(c);
    const auto& ce = m.cell_edges(c);
    const auto geo = m.cell_geometry(c);
    Point centroid = (m.vertex(v[0]) + m.vertex(v[1]) + m.vertex(v[2])) / 3.0;
    for (int i = 0; i < 3; ++i) {
      const auto& ed = m.edge(ce[i].edge);
      const std::set<std::size_t> got{ed[0], ed[1]};
      const std::set<std::size_t> want{v[(i + 1) % 3], v[(i + 2) % 3]};
      EXPECT_EQ(got, want);
      const Point out = m.edge_midpoint(ce[i].edge) - centroid;
      const Point n = m.edge_normal(ce[i].edge) * ce[i].sign;
      EXPECT_GT(n.dot(out), 0.0);
      EXPECT_NEAR((geo.outward_normals[i] - n).norm(), 0.0, 1e-15);
      EXPECT_NEAR(geo.edge_lengths[i], m.edge_length(ce[i].edge), 1e-15);
    }
  }
}

TEST(Mesh, ClosedCellBoundaries) {
  const Mesh m = Mesh::unit_square(5);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const auto g = m.cell_geometry(c);
    Point s = Point::Zero();
    for (int i = 0; i < 3; ++i) s += g.edge_lengths[i] * g.outward_normals[i];
    EXPECT_NEAR(s.norm(), 0.0, 1e-15);
  }
}

TEST(Mesh, BoundaryEdgesLieOnTheSides) {
  const Mesh m = Mesh::unit_square(6);
  std::size_t flagged = 0;
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const Point x = m.edge_midpoint(e);
    const bool side = x.x() < 1e-14 || x.y() < 1e-14 || x.x() > 1 - 1e-14 || x.y() > 1 - 1e-14;
    EXPECT_EQ(side, m.is_boundary_edge(e));
    flagged += m.is_boundary_edge(e);
  }
  EXPECT_EQ(flagged, m.boundary_edges().size());
}

TEST(Mesh, InteriorEdgesShareTwoCellsWithOppositeSigns) {
  const Mesh m = Mesh::unit_square(4);
  std::vector<int> count(m.num_edges(), 0), sign_sum(m.num_edges(), 0);
  for (std::size_t c = 0; c < m.num_cells(); ++c)
    for (const auto& ce : m.cell_edges(c)) {
      ++count[ce.edge];
      sign_sum[ce.edge] += ce.sign;
    }
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    EXPECT_EQ(count[e], m.is_boundary_edge(e) ? 1 : 2);
    if (!m.is_boundary_edge(e)) {
      EXPECT_EQ(sign_sum[e], 0);
    }
  }
}

TEST(Mesh, GeometryOutOfRangeThrows) {
  const Mesh m = Mesh::unit_square(2);
  EXPECT_THROW(m.cell_geometry(8), std::out_of_range);
}

TEST(Mesh, TextDump) {
  std::ostringstream os;
  swdrag::write_mesh_text(os, Mesh::unit_square(1));
  EXPECT_FALSE(os.str().empty());
}
