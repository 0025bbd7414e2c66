//
// Copyright 2026 The formattack Authors
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
//

#include "formattack/overlap_kernels.h"

#include <gtest/gtest.h>

#include <cstring>

#include "formattack/geometry.h"
#include "formattack/rng.h"

namespace formattack::simd {
namespace {

// Includes degenerate boxes, signed zeros and boxes sharing edges with the
// zone so that every branch of the kernels is hit.
BoxColumns RandomColumns(Rng& rng, size_t n) {
  BoxColumns c;
  for (size_t i = 0; i < n; ++i) {
    double x1 = rng.Uniform(-5, 100);
    double y1 = rng.Uniform(-5, 100);
    double w = rng.Bernoulli(0.1) ? 0.0 : rng.Uniform(0, 60);
    double h = rng.Bernoulli(0.1) ? 0.0 : rng.Uniform(0, 30);
    if (rng.Bernoulli(0.05)) x1 = -0.0;
    if (rng.Bernoulli(0.05)) x1 = 20.0;
    c.x1.push_back(x1);
    c.y1.push_back(y1);
    c.x2.push_back(x1 + w);
    c.y2.push_back(y1 + h);
  }
  return c;
}

bool BitEqual(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST(OverlapKernelsTest, ScalarMatchesGeometry) {
  Rng rng(1);
  const BoxColumns c = RandomColumns(rng, 257);
  const BoundingBox zone{20, 10, 70, 40};
  std::vector<double> iou(c.size()), cov(c.size());
  IouScalar(c, zone, iou);
  CoverageScalar(c, zone, cov);
  for (size_t i = 0; i < c.size(); ++i) {
    const BoundingBox b{c.x1[i], c.y1[i], c.x2[i], c.y2[i]};
    EXPECT_TRUE(BitEqual(iou[i], Iou(b, zone))) << i;
    EXPECT_TRUE(BitEqual(cov[i], WordCoverage(b, zone))) << i;
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST(OverlapKernelsTest, Avx2BitIdenticalToScalar) {
  if (!CpuHasAvx2()) GTEST_SKIP() << "CPU lacks AVX2";
  Rng rng(2);
  for (size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 63u, 1000u}) {
    const BoxColumns c = RandomColumns(rng, n);
    for (int z = 0; z < 20; ++z) {
      const double x = rng.Uniform(-10, 80);
      const double y = rng.Uniform(-10, 80);
      const BoundingBox zone{x, y, x + rng.Uniform(0, 60),
                             y + rng.Uniform(0, 40)};
      std::vector<double> a(n), b(n);
      IouScalar(c, zone, a);
      IouAvx2(c, zone, b);
      for (size_t i = 0; i < n; ++i) ASSERT_TRUE(BitEqual(a[i], b[i])) << i;
      CoverageScalar(c, zone, a);
      CoverageAvx2(c, zone, b);
      for (size_t i = 0; i < n; ++i) ASSERT_TRUE(BitEqual(a[i], b[i])) << i;
    }
  }
}
#endif

TEST(OverlapKernelsTest, SelectIsaHonorsRequest) {
  EXPECT_EQ(SelectIsa("scalar"), Isa::kScalar);
  const Isa best = CpuHasAvx2() ? Isa::kAvx2 : Isa::kScalar;
  EXPECT_EQ(SelectIsa("avx2"), best);
  EXPECT_EQ(SelectIsa(nullptr), best);
  EXPECT_FALSE(IsaName(ActiveIsa()).empty());
}

TEST(OverlapKernelsTest, DispatchMatchesScalar) {
  Rng rng(3);
  const BoxColumns c = RandomColumns(rng, 101);
  const BoundingBox zone{10, 10, 60, 60};
  std::vector<double> a(c.size()), b(c.size());
  ComputeIou(c, zone, a);
  IouScalar(c, zone, b);
  for (size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(BitEqual(a[i], b[i]));
  ComputeCoverage(c, zone, a);
  CoverageScalar(c, zone, b);
  for (size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(BitEqual(a[i], b[i]));
}

}  // namespace
}  // namespace formattack::simd
