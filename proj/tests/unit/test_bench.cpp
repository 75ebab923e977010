// Copyright 2026 The embedtopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "embedtopics/bench.hpp"
#include "embedtopics/error.hpp"

namespace et = embedtopics;

TEST(SyntheticBlobs, DeterministicShapeAndClustered) {
  const auto a = et::synthetic_blobs(300, 8, 3, 1);
  EXPECT_EQ(a.rows(), 300);
  EXPECT_EQ(a.cols(), 8);
  EXPECT_EQ(a, et::synthetic_blobs(300, 8, 3, 1));
  EXPECT_NE(a, et::synthetic_blobs(300, 8, 3, 2));
  // Points i and i + 3 share a center; i and i + 1 do not.
  double same = 0.0;
  double other = 0.0;
  for (Eigen::Index i = 0; i + 3 < 300; ++i) {
    same += (a.row(i) - a.row(i + 3)).norm();
    other += (a.row(i) - a.row(i + 1)).norm();
  }
  EXPECT_LT(same * 2.0, other);
}

TEST(BenchScaling, OneRowPerSize) {
  et::ScalingBase base;
  base.n = 200;
  base.m = 4;
  base.k = 3;
  base.iterations = 3;
  const auto rows = et::bench_scaling(et::ScalingAxis::kN, {100, 200}, et::ClusterKind::kKMeans, 3, base);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].size, 100u);
  EXPECT_EQ(rows[1].size, 200u);
  for (const auto& r : rows) {
    EXPECT_GT(r.median_seconds, 0.0);
    EXPECT_EQ(r.reps, 3u);
    EXPECT_EQ(r.axis, et::ScalingAxis::kN);
  }
  for (auto kind : {et::ClusterKind::kSpherical, et::ClusterKind::kKMedoids, et::ClusterKind::kGmm}) {
    EXPECT_EQ(et::bench_scaling(et::ScalingAxis::kK, {1, 2}, kind, 1, base).size(), 2u);
  }
}

TEST(BenchScaling, CsvLayout) {
  std::vector<et::TimingRow> rows(1);
  rows[0].axis = et::ScalingAxis::kM;
  rows[0].size = 50;
  rows[0].algorithm = et::ClusterKind::kGmm;
  rows[0].median_seconds = 0.25;
  rows[0].reps = 5;
  EXPECT_EQ(et::timing_csv(rows), "axis,size,algorithm,median_seconds,reps\nm,50,gmm,0.25,5\n");
}

TEST(BenchScaling, AxisNames) {
  for (auto a : {et::ScalingAxis::kN, et::ScalingAxis::kM, et::ScalingAxis::kK}) {
    EXPECT_EQ(et::parse_scaling_axis(et::to_string(a)), a);
  }
  EXPECT_THROW(et::parse_scaling_axis("t"), et::Error);
}
