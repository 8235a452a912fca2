#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "rtstrat/atmosphere.hpp"

using namespace rtstrat;

TEST(OpticalGrid, Defaults)
{
  const auto g = build_grid();
  ASSERT_EQ(g.size(), 60u);
  EXPECT_NEAR(g.Z, 1.0 - std::exp(-12.0), 1e-15);
  EXPECT_EQ(g.tau.front(), 0.0);
  EXPECT_NEAR(g.tau.back(), g.Z, 1e-15);
  EXPECT_EQ(g.altitude.front(), 0.0);
  EXPECT_EQ(g.altitude.back(), 12.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_GT(g.tau[i], g.tau[i - 1]);
    EXPECT_GT(g.altitude[i], g.altitude[i - 1]);
  }
  EXPECT_NEAR(altitude_of_optical_depth(optical_depth_of_altitude(3.0)), 3.0, 1e-12);
}

TEST(OpticalGrid, CellOf)
{
  const auto g = build_grid(11, 12.0);
  EXPECT_EQ(g.cell_of(0.0), 0u);
  EXPECT_EQ(g.cell_of(g.Z), 9u);
  EXPECT_EQ(g.cell_of(0.5 * (g.tau[3] + g.tau[4])), 3u);
  const auto u = grid_from_nodes(g.tau, g.altitude);
  for (double t : {0.0, 0.05, 0.33, 0.77, g.Z}) EXPECT_EQ(u.cell_of(t), g.cell_of(t));
}

TEST(OpticalGrid, Validation)
{
  EXPECT_THROW(build_grid(1), std::invalid_argument);
  EXPECT_THROW(build_grid(10, 0.0), std::invalid_argument);
  EXPECT_THROW(grid_from_nodes({0.0, 0.5, 0.4}, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(grid_from_nodes({0.1, 0.5}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(grid_from_nodes({0.0, 0.5}, {0}), std::invalid_argument);
}

TEST(Scattering, ProfileShape)
{
  const auto g = build_grid(201, 12.0);
  const auto p = build_scattering(g, 0.4, 0.3);
  double peak = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.tau[i];
    if (t <= 0.6 * g.Z || t >= 0.9 * g.Z) {
      EXPECT_EQ(p.a_iso[i], 0.0);
    }
    if (t <= 0.9 * g.Z) {
      EXPECT_EQ(p.a_ray[i], 0.0);
    }
    peak = std::max(peak, p.a_iso[i]);
  }
  EXPECT_NEAR(peak, 0.4, 1e-3);
  EXPECT_NEAR(p.a_ray.back(), 0.3, 1e-12);
  EXPECT_TRUE(p.any_isotropic());
  EXPECT_FALSE(no_scattering(g).any_rayleigh());
  EXPECT_THROW(build_scattering(g, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(build_scattering(g, 0.1, 0.1, false, 0.9, 0.6), std::invalid_argument);
}

TEST(Boundary, Validation)
{
  BoundaryConfig b;
  EXPECT_NO_THROW(b.validate());
  b.earth_albedo = 1.0;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  b = {};
  b.alpha_bottom = 1.5;
  EXPECT_THROW(b.validate(), std::invalid_argument);
}
