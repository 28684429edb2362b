#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "swdrag/diagnostics.hpp"
#include "swdrag/fe_space.hpp"
#include "swdrag/state.hpp"

using namespace swdrag;
using swdrag::oracle::global_basis;
using swdrag::oracle::integrate01;
using swdrag::oracle::integrate_triangle;
using swdrag::oracle::locate;

namespace {

Point eval_at(const FunctionSpacePair& s, const Eigen::VectorXd& u, const Point& x) {
  const auto l = locate(s, x);
  return s.eval_velocity(u, l.cell, l.xhat);
}

std::vector<Point> random_points(int count, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) pts.emplace_back(d(gen), d(gen));
  return pts;
}

class SpaceOrder : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(SpaceOrder, DofCounts) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(3);
  const FunctionSpacePair s(m, k);
  const std::size_t interior = k == 2 ? 2 * m.num_cells() : 0;
  EXPECT_EQ(s.num_velocity_dofs(), k * m.num_edges() + interior);
  EXPECT_EQ(s.num_pressure_dofs(), m.num_cells() * (k == 1 ? 1 : 3));
  EXPECT_EQ(s.velocity_dofs_per_cell(), k == 1 ? 3 : 8);
  EXPECT_EQ(s.boundary_velocity_dofs().size(), k * m.boundary_edges().size());
  EXPECT_EQ(s.boundary_velocity_dofs().size() + s.free_velocity_dofs().size(), s.num_velocity_dofs());
}

TEST_P(SpaceOrder, InterpolatingABasisFunctionGivesAUnitVector) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(2);
  const FunctionSpacePair s(m, k);
  for (std::size_t g = 0; g < s.num_velocity_dofs(); ++g) {
    const Eigen::VectorXd d = s.interpolate_hdiv([&](const Point& x) { return global_basis(s, g, x); });
    for (Eigen::Index i = 0; i < d.size(); ++i)
      EXPECT_NEAR(d[i], static_cast<std::size_t>(i) == g ? 1.0 : 0.0, 1e-12) << "dof " << g;
  }
}

TEST_P(SpaceOrder, NormalComponentContinuousAcrossEdges) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(3);
  const FunctionSpacePair s(m, k);
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::VectorXd u(s.num_velocity_dofs());
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = d(gen);
  std::vector<std::vector<std::size_t>> cells_of(m.num_edges());
  for (std::size_t c = 0; c < m.num_cells(); ++c)
    for (const auto& ce : m.cell_edges(c)) cells_of[ce.edge].push_back(c);
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    if (cells_of[e].size() != 2) continue;
    for (double t : {0.1, 0.5, 0.83}) {
      const Point x = (1 - t) * m.vertex(m.edge(e)[0]) + t * m.vertex(m.edge(e)[1]);
      double flux[2];
      for (int side = 0; side < 2; ++side) {
        const std::size_t c = cells_of[e][side];
        Point r = s.cell_map(c).to_reference(x).cwiseMax(0.0);
        flux[side] = s.eval_velocity(u, c, r).dot(m.edge_normal(e));
      }
      EXPECT_NEAR(flux[0], flux[1], 1e-12);
    }
  }
}

TEST_P(SpaceOrder, ReproducesPolynomialsOfDegreeBelowK) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(3);
  const FunctionSpacePair s(m, k);
  const auto field = [k](const Point& x) {
    return k == 1 ? Point(0.3, -1.7) : Point(0.3 + 2 * x.x() - x.y(), -1.7 + 0.5 * x.x() + 3 * x.y());
  };
  const Eigen::VectorXd u = s.interpolate_hdiv(field);
  for (const Point& x : random_points(50, 3)) EXPECT_NEAR((eval_at(s, u, x) - field(x)).norm(), 0.0, 1e-12);
}

TEST_P(SpaceOrder, RadialFieldHasDivergenceTwo) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(4);
  const FunctionSpacePair s(m, k);
  const Eigen::VectorXd u = s.interpolate_hdiv([](const Point& x) { return x; });
  for (const Point& x : random_points(40, 11)) {
    const auto l = locate(s, x);
    EXPECT_NEAR(s.eval_divergence(u, l.cell, l.xhat), 2.0, 1e-11);
  }
}

TEST_P(SpaceOrder, CommutingDiagram) {
  // Projection of div u equals div of the interpolant.
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(3);
  const FunctionSpacePair s(m, k);
  const Eigen::VectorXd u = s.interpolate_hdiv([](const Point& x) { return oracle::mms_u(x); });
  const Eigen::VectorXd pdiv = s.project_pressure([](const Point& x) { return oracle::mms_div(x); });
  for (std::size_t c = 0; c < m.num_cells(); ++c)
    for (const Point& xhat : {Point(0.2, 0.2), Point(0.6, 0.1), Point(0.1, 0.7)})
      EXPECT_NEAR(s.eval_divergence(u, c, xhat), s.eval_pressure(pdiv, c, xhat), 1e-10);
}

TEST_P(SpaceOrder, FluxMomentsMatchAdaptiveQuadrature) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(4);
  const FunctionSpacePair s(m, k);
  const Eigen::VectorXd u = s.interpolate_hdiv([](const Point& x) { return oracle::mms_u(x); });
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const Point a = m.vertex(m.edge(e)[0]);
    const Point t = m.vertex(m.edge(e)[1]) - a;
    const Point n = m.edge_normal(e);
    const double len = t.norm();
    const double q0 = integrate01([&](double r) { return oracle::mms_u(a + r * t).dot(n) * len; });
    EXPECT_NEAR(u[e * k], q0, 1e-12);
    if (k == 2) {
      const double q1 =
          integrate01([&](double r) { return (2 * r - 1) * oracle::mms_u(a + r * t).dot(n) * len; });
      EXPECT_NEAR(u[e * k + 1], q1, 1e-12);
    }
  }
}

TEST_P(SpaceOrder, BoundaryDofsOfTangentialFieldVanish) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(5);
  const FunctionSpacePair s(m, k);
  const Eigen::VectorXd u = s.interpolate_hdiv([](const Point& x) { return oracle::mms_u(x); });
  for (std::size_t i : s.boundary_velocity_dofs()) EXPECT_NEAR(u[i], 0.0, 1e-14);
  for (std::size_t e : m.boundary_edges())
    for (int j = 0; j < k; ++j) EXPECT_TRUE(s.is_boundary_velocity_dof(e * k + j));
}

TEST_P(SpaceOrder, InterpolationErrorConvergesAtOrderK) {
  const int k = GetParam();
  std::vector<double> h, err, perr;
  for (std::size_t n : {4u, 8u, 16u}) {
    const Mesh m = Mesh::unit_square(n);
    const FunctionSpacePair s(m, k);
    State st;
    st.u = s.interpolate_hdiv([](const Point& x) { return oracle::mms_u(x); });
    st.eta = s.project_pressure([](const Point& x) { return oracle::mms_eta(x); });
    const L2Errors e = l2_errors(s, st, [](const Point& x) { return oracle::mms_u(x); },
                                 [](const Point& x) { return oracle::mms_eta(x); });
    h.push_back(m.h());
    err.push_back(e.u);
    perr.push_back(e.eta);
  }
  EXPECT_NEAR(fit_order(h, err), k, 0.15);
  EXPECT_NEAR(fit_order(h, perr), k, 0.15);
}

TEST_P(SpaceOrder, PressureProjectionIsIdempotent) {
  const int k = GetParam();
  const Mesh m = Mesh::unit_square(3);
  const FunctionSpacePair s(m, k);
  const Eigen::VectorXd p = s.project_pressure([](const Point& x) { return oracle::mms_eta(x); });
  const Eigen::VectorXd q = s.project_pressure([&](const Point& x) {
    const auto l = locate(s, x);
    return s.eval_pressure(p, l.cell, l.xhat);
  });
  EXPECT_NEAR((p - q).norm(), 0.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Orders, SpaceOrder, ::testing::Values(1, 2));

TEST(RaviartThomas, LowestOrderDivergenceIsSignedInverseArea) {
  const Mesh m = Mesh::unit_square(3);
  const FunctionSpacePair s(m, 1);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const double area = m.cell_geometry(c).area;
    const ScalarValues d = s.eval_velocity_div(c, Point(0.3, 0.3));
    const auto dofs = s.velocity_cell_dofs(c);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(d[i] * area, m.cell_edges(c)[i].sign, 1e-13);
      EXPECT_EQ(dofs[i].index, m.cell_edges(c)[i].edge);
    }
  }
}

TEST(RaviartThomas, CellFluxOfNextToLowestBasis) {
  // Integral of div phi over a cell: outward flux, nonzero only for the constant edge moments.
  const Mesh m = Mesh::unit_square(2);
  const FunctionSpacePair s(m, 2);
  const auto& q = s.quadrature();
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    ScalarValues total = ScalarValues::Zero(8);
    for (std::size_t i = 0; i < q.size(); ++i) total += s.qp_jxw(c, i) * s.qp_div(c, i);
    const auto dofs = s.velocity_cell_dofs(c);
    for (int i = 0; i < 8; ++i) {
      double want = 0.0;
      for (int j = 0; j < 3; ++j)
        if (dofs[i].index == m.cell_edges(c)[j].edge * 2) want = m.cell_edges(c)[j].sign;
      EXPECT_NEAR(total[i], want, 1e-13);
    }
  }
}

TEST(RaviartThomas, InteriorMomentsAgainstAdaptiveQuadrature) {
  const Mesh m = Mesh::unit_square(2);
  const FunctionSpacePair s(m, 2);
  const Eigen::VectorXd u = s.interpolate_hdiv([](const Point& x) { return oracle::mms_u(x); });
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const auto& v = m.cell(c);
    const Eigen::Matrix2d jinv = s.cell_map(c).jacobian.inverse();
    const auto dofs = s.velocity_cell_dofs(c);
    for (int j = 0; j < 2; ++j) {
      const double want = integrate_triangle(m.vertex(v[0]), m.vertex(v[1]), m.vertex(v[2]),
                                             [&](const Point& x) { return (jinv * oracle::mms_u(x))[j]; });
      EXPECT_NEAR(u[dofs[6 + j].index], want, 1e-12);
    }
  }
}

TEST(RaviartThomas, InvalidOrderThrows) {
  EXPECT_THROW(RaviartThomasReference(0), std::invalid_argument);
  EXPECT_THROW(RaviartThomasReference(3), std::invalid_argument);
}

TEST(PressureSpace, CellMeansOnTheSingleSquare) {
  const Mesh m = Mesh::unit_square(1);
  const FunctionSpacePair s(m, 1);
  const Eigen::VectorXd p = s.project_pressure([](const Point& x) { return x.x(); });
  EXPECT_NEAR(p[0], 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(p[1], 1.0 / 3.0, 1e-14);
}

TEST(PressureSpace, LinearFieldsExactForNextToLowest) {
  const Mesh m = Mesh::unit_square(2);
  const FunctionSpacePair s(m, 2);
  const auto f = [](const Point& x) { return 1.0 + 2.0 * x.x() - 3.0 * x.y(); };
  const Eigen::VectorXd p = s.project_pressure(f);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const auto pd = s.pressure_cell_dofs(c);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(p[pd[a]], f(m.vertex(m.cell(c)[a])), 1e-13);
  }
}

TEST(FunctionSpace, RejectsPointsOutsideTheReferenceCell) {
  const Mesh m = Mesh::unit_square(2);
  const FunctionSpacePair s(m, 1);
  EXPECT_THROW(s.eval_velocity_basis(0, Point(0.8, 0.8)), std::invalid_argument);
  EXPECT_THROW(s.eval_velocity_basis(0, Point(-0.1, 0.2)), std::invalid_argument);
  EXPECT_THROW(s.eval_pressure_basis(99, Point(0.2, 0.2)), std::out_of_range);
  EXPECT_NO_THROW(s.eval_velocity_basis(0, Point(0.5, 0.5)));
}
