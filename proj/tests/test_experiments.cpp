#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "rtstrat/rtstrat.hpp"

using namespace rtstrat;

TEST(Tsv, RoundTrip)
{
  const Table t{{0.1, 0.0717123456789}, {1.5, -2.5e-7}, {12.0, 3.0}};
  const auto path = (std::filesystem::temp_directory_path() / "rtstrat_tsv_round_trip.txt").string();
  write_tsv(path, t);
  const auto back = read_tsv(path);
  std::remove(path.c_str());
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t r = 0; r < t.size(); ++r)
    for (std::size_t c = 0; c < t[r].size(); ++c) EXPECT_NEAR(back[r][c], t[r][c], 1e-11 * std::abs(t[r][c]));
}

TEST(Tsv, BadCellReportsLine)
{
  std::istringstream in("1\t2\n3\tzz\n");
  try {
    read_tsv(in, "f.txt");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("f.txt:2"), std::string::npos);
  }
}

TEST(Experiments, GreyCurveSkipsGround)
{
  ExperimentSettings s;
  const auto r = run_grey(s);
  ASSERT_EQ(r.curve.T.size(), s.n_tau - 1);
  EXPECT_GT(r.curve.altitude.front(), 0.0);
  EXPECT_EQ(r.curve.altitude.back(), 12.0);
  const auto rows = r.curve.rows();
  EXPECT_EQ(rows.front().size(), 2u);
}

TEST(Experiments, GreyGolden)
{
  // Regression values of the default grey run (exact cell quadrature).
  ExperimentSettings s;
  const auto r = run_grey(s);
  EXPECT_NEAR(r.curve.T[0], 0.0718098960060107, 1e-9);
  EXPECT_NEAR(r.curve.T[19], 0.0705617851719766, 1e-9);
  EXPECT_NEAR(r.curve.T.back(), 0.0627492499172764, 1e-9);
}

TEST(Experiments, AlbedoHeatsAndWeakerSourceCools)
{
  ExperimentSettings s;
  const auto r = run_albedo(s);
  const auto& q1 = r.cases.at("Q1").curve.T;
  const auto& q07 = r.cases.at("Q07").curve.T;
  const auto& alb = r.cases.at("albedo03Q0").curve.T;
  for (std::size_t k = 0; k < q1.size(); ++k) {
    EXPECT_GT(alb[k], q1[k]) << k;
    EXPECT_LT(q07[k], q1[k]) << k;
  }
}

TEST(Experiments, SensitivityTableLayout)
{
  SensitivityTable t{{1.0, 2.0}, {{-1, -2}, {3, 4}, {5, 6}}};
  const auto rows = t.rows();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::vector<double>{2.0, 0.0, -2, 4, 6}));
  ASSERT_EQ(sensitivity_bands().size(), 3u);
  EXPECT_EQ(sensitivity_bands()[2].nu_lo, 0.2);
}

TEST(Experiments, Prop2FileNames)
{
  EXPECT_EQ(prop2_files().at("T1"), "truethrough.txt");
  EXPECT_EQ(prop2_files().at("T5"), "correctedthrough2.txt");
}
