#include <gtest/gtest.h>

#include "collatz/report.hpp"

using namespace collatz;

TEST(Report, TrajectoryRowsCarryExponents) {
  const auto t = trajectory_odd(Natural(7));
  const auto rows = report::trajectory_rows(t.trajectory, &t.parity);
  ASSERT_EQ(rows.size(), 5u);
  const auto j = report::row_json(rows[2]);
  EXPECT_EQ(j["step"], 3);
  EXPECT_EQ(j["value"], "17");
  EXPECT_EQ(j["next"], "13");
  EXPECT_EQ(j["kind"], "decrease");
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["schema"], "collatz-lab/trajectory-row/v1");
  const std::string csv = report::trajectory_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,value,next,kind,k");
  EXPECT_NE(csv.find("\n5,5,1,decrease,4\n"), std::string::npos);
}

TEST(Report, BigValuesStayExact) {
  const Natural big = pow2(100) + 1;
  const auto t = trajectory_general(big, 1);
  const auto j = report::row_json(report::trajectory_rows(t)[0]);
  EXPECT_EQ(j["value"], "1267650600228229401496703205377");
  EXPECT_FALSE(j.contains("k"));
}

TEST(Report, HalfSplitDocument) {
  const auto j = report::halfsplit_json(halfsplit_verify(3));
  EXPECT_EQ(j["M"], 3);
  EXPECT_EQ(j["exact"], true);
  ASSERT_EQ(j["per_step"].size(), 4u);
  EXPECT_EQ(j["per_step"][3]["increase"], 2);
  EXPECT_EQ(j["per_step"][3]["decrease"], 6);
  EXPECT_EQ(j["per_step"][1]["in_range"], true);
  EXPECT_EQ(j["per_step"][2]["in_range"], false);
}

TEST(Report, SweepDocument) {
  const auto one = report::sweep_json(sweep_to_one(1));
  EXPECT_EQ(one["verified"], 1);
  EXPECT_TRUE(one["max_ratio"].is_null());
  const auto hundred = report::sweep_json(sweep_to_one(100));
  EXPECT_EQ(hundred["max_ratio"]["x"], 27);
  EXPECT_EQ(hundred["max_excursion"]["value"], "4616");
}

TEST(Report, DoubleFormattingRoundTrips) {
  for (double v : {0.1, 2.0788500000000001, 1.0 / 3.0, 1e-300})
    EXPECT_EQ(std::stod(report::fmt_double(v)), v);
  EXPECT_EQ(report::fmt_fixed(4.23794), "4.2379");
}

TEST(Report, CycleCatalog) {
  const auto cycles = cycle_catalog({5, 1}, 19, 100);
  const auto j = report::cycles_json({5, 1}, 19, 100, cycles);
  ASSERT_EQ(j["cycles"].size(), 3u);
  EXPECT_EQ(j["cycles"][1]["members"], (nlohmann::json{"13", "33", "83"}));
  EXPECT_EQ(j["cycles"][1]["product_residue"], "0");
  EXPECT_NE(report::cycles_csv(cycles).find("5,1,3,17 43 27,1 3 3,0"), std::string::npos);
}
