// Copyright 2026 The mmreflect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "mmreflect/report.hpp"

#include <gtest/gtest.h>

#include "test_grids.hpp"

namespace mmreflect {
namespace {

TEST(TableTest, FixedPrecisionCsv) {
  Table t{{{"a", 2}, {"n", 0}}, {{1.005, 3.0}, {-0.0001, 12.0}}};
  EXPECT_EQ(t.to_csv(), "a,n\n1.00,3\n0.00,12\n");
}

TEST(ReportTest, BackoffTableHasOneRowPerValidCell) {
  const RssGrid grid = testing::make_grid(2, 2, {-50, -51, -52, -53}, 0.3);
  const BackoffMap map = compute_backoff_map(grid, 1.0, 10.0);
  const Table t = backoff_table(map);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.to_csv().substr(0, 17), "x_m,y_m,delta_db\n");
}

TEST(ReportTest, OutageTableSeriesPerKappa) {
  OutageCurve a{{0.3, 0.6}, {0.1, 0.2}, 1000, 0.0, 1};
  OutageCurve b{{0.3, 0.6}, {0.05, 0.1}, 1000, 1.0, 1};
  const OutageCurve curves[] = {a, b};
  EXPECT_EQ(outage_table(curves).to_csv(),
            "displacement_m,kappa,p_out,trials\n"
            "0.3000,0.0000,0.100000,1000\n"
            "0.6000,0.0000,0.200000,1000\n"
            "0.3000,1.0000,0.050000,1000\n"
            "0.6000,1.0000,0.100000,1000\n");
}

TEST(ReportTest, ScheduleAndCoverageHeaders) {
  const KCcdf k{2, CcdfCurve{{-50.0}, {0.5}, 4}};
  EXPECT_EQ(schedule_table(std::span(&k, 1)).to_csv(),
            "threshold_db,k,ccdf\n-50.0000,2,0.500000\n");
  const CoverageRow row{0.3, 0.9, 0.75};
  EXPECT_EQ(coverage_table(std::span(&row, 1)).to_csv(),
            "width_m,height_m,coverage\n0.3000,0.9000,0.750000\n");
}

}  // namespace
}  // namespace mmreflect
